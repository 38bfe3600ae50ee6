#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "cli.hpp"
#include "scsamp/cascade.hpp"
#include "scsamp/errors.hpp"
#include "scsamp/protocol.hpp"
#include "scsamp/serialize.hpp"
#include "scsamp/wigner.hpp"

namespace scsamp::cli {
namespace {

// Runs fn(i) for i in [0, n) on up to `threads` workers. Each index owns its
// output slot, so results do not depend on scheduling. The lowest-index
// failure is rethrown.
template <class Fn>
void parallel_for(std::size_t n, unsigned threads, Fn fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  std::vector<std::exception_ptr> errors(n);
  auto work = [&](unsigned w) {
    for (std::size_t i = w; i < n; i += threads) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (threads <= 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

std::vector<double> alphas(const RunConfig& c) {
  if (c.alpha > 0.0) return {c.alpha};
  if (c.alpha < 0.0) throw std::invalid_argument("--alpha must be positive");
  return parse_range(c.alpha_range).values();
}

double single_alpha(const RunConfig& c) {
  const std::vector<double> a = alphas(c);
  if (a.size() != 1) throw std::invalid_argument(c.command + " takes a single --alpha");
  return a.front();
}

std::vector<double> losses(const RunConfig& c) {
  if (c.loss.empty()) throw std::invalid_argument("--loss needs at least one value");
  for (double r2 : c.loss)
    if (!(r2 >= 0.0 && r2 < 1.0)) throw std::invalid_argument("--loss values must lie in [0, 1)");
  return c.loss;
}

double single_loss(const RunConfig& c) {
  const std::vector<double> l = losses(c);
  if (l.size() != 1) throw std::invalid_argument(c.command + " takes a single --loss");
  return l.front();
}

AmpConfig amp_config(const RunConfig& c, double alpha, double r2) {
  AmpConfig cfg{alpha, parse_pairing(c.pairing), r2, c.attenuated_target};
  cfg.validate();
  return cfg;
}

// Rows for every (loss, alpha) pair, computed in parallel and concatenated in order.
template <class Fn>
std::vector<std::vector<Cell>> per_config(const RunConfig& c, Fn rows_for) {
  const std::vector<double> ls = losses(c);
  const std::vector<double> as = alphas(c);
  std::vector<std::vector<std::vector<Cell>>> slots(ls.size() * as.size());
  parallel_for(slots.size(), c.threads, [&](std::size_t i) {
    slots[i] = rows_for(amp_config(c, as[i % as.size()], ls[i / as.size()]));
  });
  std::vector<std::vector<Cell>> out;
  for (auto& s : slots)
    for (auto& r : s) out.push_back(std::move(r));
  return out;
}

CommandResult cmd_curves(const RunConfig& c) {
  CommandResult res;
  res.table.columns = {"alpha", "parity", "x", "vacuum", "combination"};
  const std::vector<double> xs = parse_range(c.x_range).values();
  for (double a : alphas(c)) {
    const CoherentLabel plus(std::sqrt(2.0) * a);
    const CoherentLabel minus(-std::sqrt(2.0) * a);
    for (Parity parity : {Parity::even, Parity::odd}) {
      const double sign = parity == Parity::even ? 1.0 : -1.0;
      for (double x : xs) {
        const double vacuum = quadrature_wavefunction(CoherentLabel(0.0), x).real();
        const double comb = quadrature_wavefunction(plus, x).real() + sign * quadrature_wavefunction(minus, x).real();
        res.table.rows.push_back({a, to_string(parity), x, vacuum, comb});
      }
    }
  }
  return res;
}

CommandResult cmd_sweep(const RunConfig& c) {
  CommandResult res;
  res.table.columns = {"pairing", "loss", "alpha", "x0", "fidelity", "density"};
  const std::vector<double> xs = parse_range(c.x_range).values();
  res.table.rows = per_config(c, [&](const AmpConfig& cfg) {
    const ConditionalKernel k(cfg);
    std::vector<std::vector<Cell>> rows;
    for (double x : xs) rows.push_back({c.pairing, cfg.loss_r2, cfg.alpha, x, k.fidelity(x), k.density(x)});
    return rows;
  });
  return res;
}

CommandResult cmd_density(const RunConfig& c) {
  CommandResult res;
  res.table.columns = {"pairing", "loss", "alpha", "x", "density"};
  const std::vector<double> xs = parse_range(c.x_range).values();
  res.table.rows = per_config(c, [&](const AmpConfig& cfg) {
    const ConditionalKernel k(cfg);
    std::vector<std::vector<Cell>> rows;
    for (double x : xs) rows.push_back({c.pairing, cfg.loss_r2, cfg.alpha, x, k.density(x)});
    return rows;
  });
  return res;
}

CommandResult cmd_success(const RunConfig& c) {
  CommandResult res;
  res.table.columns = {"pairing", "alpha", "target", "loss", "probability", "window", "avg_fidelity"};
  const std::vector<double>& targets = c.targets;
  if (targets.empty()) throw std::invalid_argument("--targets needs at least one value");
  for (double t : targets)
    if (!(t > 0.0 && t <= 1.0)) throw std::invalid_argument("--targets values must lie in (0, 1]");
  res.table.rows = per_config(c, [&](const AmpConfig& cfg) {
    const ConditionalKernel k(cfg);
    std::vector<std::vector<Cell>> rows;
    for (double t : targets) {
      const WindowStats s = max_prob_at_target(k, t);
      rows.push_back({c.pairing, cfg.alpha, t, cfg.loss_r2, s.probability, s.half_width, s.avg_fidelity});
    }
    return rows;
  });
  return res;
}

void append_grid(Table& t, const std::string& label, const PhaseGrid& g) {
  for (std::size_t ip = 0; ip < g.p_axis.size(); ++ip)
    for (std::size_t ix = 0; ix < g.x_axis.size(); ++ix) t.rows.push_back({label, g.x_axis[ix], g.p_axis[ip], g.at(ix, ip)});
}

AxisSpec axis(const std::string& text) {
  const Range r = parse_range(text);
  return {r.start, r.stop, r.step};
}

CommandResult cmd_wigner(const RunConfig& c) {
  CommandResult res;
  res.table.columns = {"state", "x", "p", "W"};
  const AmpConfig cfg = amp_config(c, single_alpha(c), single_loss(c));
  const GridSpec spec{axis(c.x_range), axis(c.p_range)};

  const PureCSS input = scs_state(cfg.alpha, cfg.input_parities().second);
  DyadMix output(1);
  if (c.window > 0.0) {
    output = window_discretize(cfg, c.window, c.nodes);
    const WindowStats s = avg_fidelity_window(cfg, c.window);
    res.results["probability"] = s.probability;
    res.results["fidelity"] = s.avg_fidelity;
  } else {
    const ConditionalKernel k(cfg);
    output = k.conditional_state(c.outcome).normalized();
    res.results["density"] = k.density(c.outcome);
    res.results["fidelity"] = k.fidelity(c.outcome);
  }
  res.results["state_fidelity"] = fidelity_with_pure(output, cfg.target_state());

  const GridSpec center{{0.0, 0.0, 1.0}, spec.p};
  res.results["p_axis_zero_crossings"] = {
      {"input", zero_crossings(wigner_state(input, center).p_slice(0))},
      {"output", zero_crossings(wigner_state(output, center).p_slice(0))}};

  append_grid(res.table, "input", wigner_state(input, spec));
  append_grid(res.table, "output", wigner_state(output, spec));
  return res;
}

CommandResult cmd_cascade(const RunConfig& c) {
  CascadePolicy p;
  p.stages = c.stages;
  p.conditioning = c.window > 0.0 ? Conditioning::window : Conditioning::exact_outcome;
  p.outcome = c.outcome;
  p.half_width = c.window;
  p.nodes = c.nodes;
  if (c.policy == "clone") {
    p.rule = PairingRule::clone_state;
  } else if (c.policy == "refresh") {
    p.rule = PairingRule::ideal_refresh;
  } else {
    throw std::invalid_argument("--policy must be clone or refresh");
  }
  p.loss_r2 = single_loss(c);
  p.term_cap = c.term_cap;

  const std::filesystem::path dir = c.checkpoint_dir;
  if (!dir.empty()) std::filesystem::create_directories(dir);
  StageCallback checkpoint;
  if (!dir.empty()) {
    checkpoint = [&](const StageReport& r, const DyadMix& state) {
      const auto path = dir / ("stage_" + std::to_string(r.stage) + ".json");
      std::ofstream f(path);
      f << nlohmann::json{{"report", to_json(r)}, {"state", to_json(state)}}.dump(2) << '\n';
      if (!f) throw std::runtime_error("cannot write checkpoint " + path.string());
    };
  }

  CommandResult res;
  res.table.columns = {"stage",    "input_amplitude",        "target_parity", "fidelity", "stage_probability",
                       "cumulative_probability", "term_count", "label_count"};
  for (const StageReport& r : cascade_run(single_alpha(c), parse_pairing(c.pairing), p, checkpoint)) {
    res.table.rows.push_back({std::int64_t{r.stage}, r.input_amplitude, to_string(r.target_parity), r.fidelity,
                              r.stage_probability, r.cumulative_probability, std::int64_t(r.term_count),
                              std::int64_t(r.label_count)});
  }
  return res;
}

}  // namespace

void resolve_defaults(RunConfig& c) {
  const std::string& cmd = c.command;
  auto fill = [](std::string& field, const char* value) {
    if (field.empty()) field = value;
  };
  if (cmd == "curves") {
    fill(c.alpha_range, "0.5:2:0.5");
    fill(c.x_range, "-5:5:0.01");
  } else if (cmd == "sweep") {
    fill(c.alpha_range, "0.1:2.5:0.02");
    fill(c.x_range, "-3:3:0.02");
  } else if (cmd == "density") {
    fill(c.alpha_range, "0.5:2:0.5");
    fill(c.x_range, "-6:6:0.01");
  } else if (cmd == "success") {
    fill(c.alpha_range, "0.1:2.5:0.05");
  } else if (cmd == "wigner") {
    if (c.alpha == 0.0 && c.alpha_range.empty()) c.alpha = 1.2;
    fill(c.x_range, "-4:4:0.05");
    fill(c.p_range, "-4:4:0.05");
  } else if (cmd == "cascade") {
    if (c.alpha == 0.0 && c.alpha_range.empty()) c.alpha = 1.2;
  }
  fill(c.format, cmd == "cascade" ? "jsonl" : "csv");
}

CommandResult run_command(const RunConfig& c) {
  if (c.command == "curves") return cmd_curves(c);
  if (c.command == "sweep") return cmd_sweep(c);
  if (c.command == "density") return cmd_density(c);
  if (c.command == "success") return cmd_success(c);
  if (c.command == "wigner") return cmd_wigner(c);
  if (c.command == "cascade") return cmd_cascade(c);
  throw std::invalid_argument("unknown command " + c.command);
}

}  // namespace scsamp::cli
