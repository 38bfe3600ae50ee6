#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>

#include "commands.hpp"
#include "run_config.hpp"
#include "scsamp/cascade.hpp"
#include "scsamp/errors.hpp"
#include "scsamp/fock_oracle.hpp"
#include "scsamp/protocol.hpp"
#include "scsamp/quadrature.hpp"

#ifndef SCSAMP_VERSION
#define SCSAMP_VERSION "0.0.0"
#endif

namespace scsamp::cli {
namespace {

nlohmann::json tolerances() {
  return {{"quadrature_abs_tol", quad::kAbsTol},
          {"quadrature_max_depth", quad::kMaxDepth},
          {"window_scan_step", kScanStep},
          {"window_search_tol", kSearchTol},
          {"prune_tol", kDefaultPruneTol},
          {"fock_tail_tol", fock::kTailTol}};
}

void write_body(std::ostream& out, const RunConfig& cfg, const CommandResult& res) {
  if (cfg.format == "csv") {
    write_csv(out, res.table);
  } else if (cfg.format == "json") {
    out << to_json(res.table).dump(2) << '\n';
  } else {
    // jsonl: one object per row
    for (const auto& row : res.table.rows) {
      nlohmann::json obj = nlohmann::json::object();
      for (std::size_t i = 0; i < row.size(); ++i) std::visit([&](const auto& v) { obj[res.table.columns[i]] = v; }, row[i]);
      out << obj.dump() << '\n';
    }
  }
}

void emit(const RunConfig& cfg, const CommandResult& res, std::ostream& out) {
  if (cfg.out.empty()) {
    write_body(out, cfg, res);
    return;
  }
  {
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + cfg.out);
    write_body(f, cfg, res);
    if (!f) throw std::runtime_error("failed writing " + cfg.out);
  }
  const nlohmann::json meta = {{"schema_version", kSchemaVersion},
                               {"tool", "scsamp"},
                               {"version", SCSAMP_VERSION},
                               {"config", to_json(cfg)},
                               {"tolerances", tolerances()},
                               {"columns", res.table.columns},
                               {"rows", res.table.rows.size()},
                               {"results", res.results}};
  std::ofstream m(cfg.out + ".meta.json", std::ios::binary);
  m << meta.dump(2) << '\n';
  if (!m) throw std::runtime_error("failed writing " + cfg.out + ".meta.json");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Amplification of coherent-state superpositions by beam splitting and homodyne conditioning.",
               "scsamp"};
  app.set_version_flag("--version", SCSAMP_VERSION);
  app.set_config("--config", "", "Flat key=value file; command-line flags take precedence");
  app.require_subcommand(1, 1);

  RunConfig cfg;
  app.add_option("--pairing", cfg.pairing, "Input parities")
      ->check(CLI::IsMember({"odd-odd", "even-even", "even-odd"}))
      ->capture_default_str();
  app.add_option("--alpha", cfg.alpha, "Single input amplitude");
  app.add_option("--alpha-range", cfg.alpha_range, "Amplitudes start:stop:step");
  app.add_option("--x-range", cfg.x_range, "Outcome or x grid start:stop:step");
  app.add_option("--p-range", cfg.p_range, "Wigner p grid start:stop:step");
  app.add_option("--loss", cfg.loss, "Comma-separated loss r^2 values")->delimiter(',')->capture_default_str();
  app.add_option("--targets", cfg.targets, "Comma-separated target fidelities")->delimiter(',')->capture_default_str();
  app.add_option("--window", cfg.window, "Acceptance half-width; 0 conditions on --outcome")->capture_default_str();
  app.add_option("--outcome", cfg.outcome, "Exact homodyne outcome")->capture_default_str();
  app.add_option("--nodes", cfg.nodes, "Gauss-Legendre nodes across the window")->capture_default_str();
  app.add_option("--stages", cfg.stages, "Cascade stages")->capture_default_str();
  app.add_option("--policy", cfg.policy, "Cascade pairing rule")
      ->check(CLI::IsMember({"clone", "refresh"}))
      ->capture_default_str();
  app.add_option("--term-cap", cfg.term_cap, "Cascade dyad-term limit")->capture_default_str();
  app.add_flag("--attenuated-target", cfg.attenuated_target, "Compare against the loss-attenuated target amplitude");
  app.add_option("--out", cfg.out, "Output file (stdout if omitted); writes <out>.meta.json alongside");
  app.add_option("--format", cfg.format, "csv, json or jsonl")->check(CLI::IsMember({"csv", "json", "jsonl"}));
  app.add_option("--checkpoint-dir", cfg.checkpoint_dir, "Cascade: write each stage's state here");
  app.add_option("--threads", cfg.threads, "Worker threads, 0 for all cores")->capture_default_str();

  const std::pair<const char*, const char*> commands[] = {
      {"curves", "Vacuum and SCS-combination quadrature wavefunctions"},
      {"sweep", "Fidelity and outcome density over (alpha, x0)"},
      {"density", "Outcome density p(x)"},
      {"success", "Largest window probability meeting each target fidelity"},
      {"wigner", "Wigner functions of the input and the conditioned output"},
      {"cascade", "Repeated amplification stages"},
  };
  for (const auto& [name, desc] : commands) app.add_subcommand(name, desc)->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }
  cfg.command = app.get_subcommands().front()->get_name();

  try {
    resolve_defaults(cfg);
    emit(cfg, run_command(cfg), out);
  } catch (const NumericError& e) {
    err << "numeric failure: " << e.what() << '\n';
    return kNumeric;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kOk;
}

}  // namespace scsamp::cli
