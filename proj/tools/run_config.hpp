#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

namespace scsamp::cli {

// Every flag the tool understands. Range flags stay as text until a command
// resolves them; empty text means the command default.
struct RunConfig {
  std::string command;
  std::string pairing = "even-odd";
  double alpha = 0.0;  // 0: use alpha_range
  std::string alpha_range;
  std::string x_range;
  std::string p_range;
  std::vector<double> loss{0.0};  // r^2 values
  std::vector<double> targets{0.90, 0.95, 0.99};
  double window = 1.0;
  double outcome = 0.0;
  int nodes = 21;
  int stages = 1;
  std::string policy = "clone";
  std::size_t term_cap = 100000;
  bool attenuated_target = false;
  std::string out;
  std::string format;
  std::string checkpoint_dir;
  unsigned threads = 0;  // 0: hardware concurrency
};

nlohmann::json to_json(const RunConfig& cfg);

using Cell = std::variant<double, std::int64_t, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

void write_csv(std::ostream& out, const Table& t);
nlohmann::json to_json(const Table& t);

inline constexpr int kSchemaVersion = 1;

}  // namespace scsamp::cli
