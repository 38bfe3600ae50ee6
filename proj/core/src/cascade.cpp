#include "scsamp/cascade.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "scsamp/errors.hpp"
#include "scsamp/quadrature.hpp"

namespace scsamp {
namespace {

void check_cap(const DyadMix& m, std::size_t cap, int stage, const char* where) {
  if (m.size() > cap) {
    throw NumericError("cascade stage " + std::to_string(stage) + ": " + std::to_string(m.size()) +
                       " dyad terms " + where + " exceed the cap of " + std::to_string(cap));
  }
}

void require_window(double w, int k) {
  if (!(w > 0.0) || !std::isfinite(w)) throw std::invalid_argument("window half-width must be positive");
  if (k < 3 || k % 2 == 0) throw std::invalid_argument("window node count must be odd and >= 3");
}

ConditionedState finish(DyadMix acc, double prune_tol) {
  DyadMix merged = prune(canonicalize(acc), prune_tol);
  const double probability = trace(merged).real();
  if (!(probability > 0.0)) throw NumericError("conditioning produced a vanishing state");
  return {merged.scaled(1.0 / probability), probability};
}

}  // namespace

void CascadePolicy::validate() const {
  if (stages < 1) throw std::invalid_argument("cascade needs at least one stage");
  if (conditioning == Conditioning::window) require_window(half_width, nodes);
  if (!std::isfinite(outcome)) throw std::invalid_argument("outcome must be finite");
  if (!(loss_r2 >= 0.0 && loss_r2 < 1.0)) throw std::invalid_argument("loss r2 must lie in [0, 1)");
  if (term_cap == 0) throw std::invalid_argument("term cap must be positive");
  if (!(prune_tol >= 0.0)) throw std::invalid_argument("prune tolerance must be nonnegative");
}

nlohmann::json to_json(const StageReport& r) {
  return {{"stage", r.stage},
          {"input_amplitude", r.input_amplitude},
          {"target_parity", to_string(r.target_parity)},
          {"fidelity", r.fidelity},
          {"stage_probability", r.stage_probability},
          {"cumulative_probability", r.cumulative_probability},
          {"term_count", r.term_count},
          {"label_count", r.label_count}};
}

ConditionedState condition_window(const DyadMix& after_bs, double w, int k, double prune_tol) {
  require_window(w, k);
  const quad::Rule rule = quad::gauss_legendre(static_cast<std::size_t>(k), -w, w);
  DyadMix acc(after_bs.modes() - 1);
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    acc.accumulate(homodyne_project_mixed(after_bs, kMeasuredMode, rule.nodes[i]).reduced, rule.weights[i]);
  }
  return finish(std::move(acc), prune_tol);
}

ConditionedState condition_outcome(const DyadMix& after_bs, double x0, double prune_tol) {
  return finish(homodyne_project_mixed(after_bs, kMeasuredMode, x0).reduced, prune_tol);
}

DyadMix window_discretize(const AmpConfig& cfg, double w, int k) {
  return condition_window(canonicalize(post_beam_splitter(cfg)), w, k).state;
}

std::vector<StageReport> cascade_run(double alpha, Pairing seed, const CascadePolicy& policy,
                                     const StageCallback& on_stage) {
  policy.validate();
  AmpConfig seed_cfg{alpha, seed, 0.0};
  seed_cfg.validate();
  const bool opposite_seed = seed == Pairing::even_odd;

  const auto [p0, p1] = seed_cfg.input_parities();
  DyadMix left = DyadMix::from_pure(scs_state(alpha, p0));
  DyadMix right = DyadMix::from_pure(scs_state(alpha, p1));
  Parity left_parity = p0;
  Parity right_parity = p1;

  std::vector<StageReport> reports;
  double cumulative = 1.0;
  double amplitude = alpha;
  for (int stage = 1; stage <= policy.stages; ++stage) {
    const Parity target_parity = left_parity == right_parity ? Parity::even : Parity::odd;
    DyadMix joint = loss_channel(tensor(left, right), policy.loss_r2);
    check_cap(joint, policy.term_cap, stage, "before the beam splitter");
    const DyadMix after = canonicalize(beam_splitter_5050(joint, 0, 1));

    ConditionedState out = policy.conditioning == Conditioning::window
                               ? condition_window(after, policy.half_width, policy.nodes, policy.prune_tol)
                               : condition_outcome(after, policy.outcome, policy.prune_tol);
    check_cap(out.state, policy.term_cap, stage, "after conditioning");

    cumulative *= out.probability;
    const PureCSS target = scs_state(std::numbers::sqrt2 * amplitude, target_parity);
    StageReport report;
    report.stage = stage;
    report.input_amplitude = amplitude;
    report.target_parity = target_parity;
    report.fidelity = fidelity_with_pure(out.state, target);
    report.stage_probability = out.probability;
    report.cumulative_probability = cumulative;
    report.term_count = out.state.size();
    report.label_count = label_set(out.state).size();
    reports.push_back(report);
    if (on_stage) on_stage(report, out.state);

    amplitude *= std::numbers::sqrt2;
    if (policy.rule == PairingRule::clone_state) {
      left = out.state;
      right = out.state;
      left_parity = right_parity = target_parity;
    } else {
      const Parity partner = opposite_seed ? opposite(target_parity) : target_parity;
      DyadMix fresh = DyadMix::from_pure(scs_state(amplitude, partner));
      // Keep the even input in mode 0, as for the seed pairing.
      if (partner == Parity::even && target_parity == Parity::odd) {
        left = std::move(fresh);
        right = out.state;
        left_parity = partner;
        right_parity = target_parity;
      } else {
        left = out.state;
        right = std::move(fresh);
        left_parity = target_parity;
        right_parity = partner;
      }
    }
  }
  return reports;
}

}  // namespace scsamp
