#pragma once

// Repeated amplification: each stage mixes two copies (or the previous output
// and a fresh ideal SCS) on the beam splitter and conditions on the homodyne
// outcome, so the nominal amplitude grows by sqrt2 per stage.

#include <cstddef>
#include <functional>
#include <vector>

#include <nlohmann/json.hpp>

#include "scsamp/cstate.hpp"
#include "scsamp/protocol.hpp"

namespace scsamp {

enum class Conditioning { exact_outcome, window };

enum class PairingRule {
  // Two identical copies of the previous output. Assumes two independently
  // prepared runs both succeeded.
  clone_state,
  // Previous output paired with a fresh ideal SCS of the same nominal
  // amplitude. For opposite-parity seeds the fresh partner takes the parity
  // opposite to the output, so every stage stays opposite-parity.
  ideal_refresh,
};

struct CascadePolicy {
  int stages = 1;
  Conditioning conditioning = Conditioning::window;
  double outcome = 0.0;     // exact_outcome: accepted x0
  double half_width = 1.0;  // window: accepted [-w, w]
  int nodes = 21;           // window: Gauss-Legendre nodes, odd and >= 3
  PairingRule rule = PairingRule::clone_state;
  double loss_r2 = 0.0;  // applied to both inputs of every stage
  std::size_t term_cap = 100000;
  double prune_tol = kDefaultPruneTol;

  void validate() const;
};

struct StageReport {
  int stage = 0;
  double input_amplitude = 0.0;
  Parity target_parity = Parity::even;
  double fidelity = 0.0;
  // Window mode: acceptance probability of the stage. Exact-outcome mode:
  // probability density at the accepted outcome.
  double stage_probability = 0.0;
  double cumulative_probability = 0.0;
  std::size_t term_count = 0;
  std::size_t label_count = 0;
};

nlohmann::json to_json(const StageReport& r);

struct ConditionedState {
  DyadMix state;       // trace-normalized, canonicalized, pruned
  double probability;  // window probability or outcome density
};

// Conditions the measured mode of a post-beam-splitter two-mode mixture on
// the window [-w, w] using K Gauss-Legendre nodes: sum_k w_k rho(x_k).
ConditionedState condition_window(const DyadMix& after_bs, double w, int k, double prune_tol = kDefaultPruneTol);
ConditionedState condition_outcome(const DyadMix& after_bs, double x0, double prune_tol = kDefaultPruneTol);

// The window-conditioned output of a single amplification step, normalized.
DyadMix window_discretize(const AmpConfig& cfg, double w, int k);

using StageCallback = std::function<void(const StageReport&, const DyadMix&)>;

// Throws NumericError if a stage's mixture exceeds policy.term_cap.
std::vector<StageReport> cascade_run(double alpha, Pairing seed, const CascadePolicy& policy,
                                     const StageCallback& on_stage = {});

}  // namespace scsamp
