#pragma once

#include <nlohmann/json.hpp>

#include "run_config.hpp"

namespace scsamp::cli {

struct CommandResult {
  Table table;
  nlohmann::json results = nlohmann::json::object();  // summary values for the sidecar
};

// Fills command defaults into cfg (ranges, format) so the sidecar records
// what actually ran.
void resolve_defaults(RunConfig& cfg);

CommandResult run_command(const RunConfig& cfg);

}  // namespace scsamp::cli
