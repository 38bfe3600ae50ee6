#pragma once

// SCS amplification: two SCSs of amplitude alpha meet at a 50:50 beam
// splitter, the x quadrature of one output is measured, and the other output
// is kept when the outcome is accepted. With opposite input parities the
// kept state is an odd SCS of amplitude sqrt2*alpha exactly at x0 = 0.
//
// Mode layout: inputs occupy modes 0 and 1. After the beam splitter mode 0
// carries (a - b)/sqrt2 and is measured; mode 1 carries (a + b)/sqrt2 and is
// the output.

#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "scsamp/cstate.hpp"

namespace scsamp {

enum class Pairing { odd_odd, even_even, even_odd };

std::string to_string(Pairing p);
// Accepts "odd-odd", "even-even", "even-odd". Throws std::invalid_argument.
Pairing parse_pairing(std::string_view text);

struct AmpConfig {
  double alpha = 1.0;
  Pairing pairing = Pairing::even_odd;
  double loss_r2 = 0.0;
  // Compare against |SCS(sqrt2 t alpha)> instead of the ideal |SCS(sqrt2 alpha)>.
  bool attenuated_target = false;

  void validate() const;
  bool lossless() const { return loss_r2 == 0.0; }
  // Parities of the inputs in modes 0 and 1.
  std::pair<Parity, Parity> input_parities() const;
  // Same-parity pairs target an even SCS, opposite-parity pairs an odd one.
  Parity target_parity() const;
  double target_amplitude() const;
  PureCSS target_state() const;
};

inline constexpr std::size_t kMeasuredMode = 0;

// Two-mode input before the beam splitter (lossless pure form).
PureCSS input_pair(const AmpConfig& cfg);
// Two-mode state after loss and beam splitter.
DyadMix post_beam_splitter(const AmpConfig& cfg);

// Conditional output for outcome x0: a normalized PureCSS without loss, a
// trace-normalized DyadMix with loss.
std::variant<PureCSS, DyadMix> projected_state(const AmpConfig& cfg, double x0);

// Unnormalized conditional output (trace = density) via the dyad path.
DyadMix conditional_dyads(const AmpConfig& cfg, double x0);

double density_p(const AmpConfig& cfg, double x0);
double fidelity_pointwise(const AmpConfig& cfg, double x0);

// Precomputed x-dependence of the conditional state: the measured-mode labels
// enter only through <x|a> factors, so p(x) and p(x)F(x) are short sums over
// (ket label, bra label) groups of the measured mode.
class ConditionalKernel {
 public:
  explicit ConditionalKernel(const AmpConfig& cfg);

  const AmpConfig& config() const { return cfg_; }
  double density(double x) const;
  // p(x) F(x), the integrand of the window-average numerator.
  double weighted_fidelity(double x) const;
  double fidelity(double x) const;
  DyadMix conditional_state(double x) const;  // unnormalized

 private:
  struct Group {
    CoherentLabel ket;
    CoherentLabel bra;
    cplx trace;
    cplx overlap;  // <target|residual|target>
    DyadMix residual;
  };
  cplx weight(const Group& g, double x) const;

  AmpConfig cfg_;
  double target_norm2_;
  std::vector<Group> groups_;
};

struct WindowStats {
  double half_width = 0.0;
  double probability = 0.0;
  double avg_fidelity = 0.0;
};

// Accepting outcomes in [-x0, x0]. At x0 = 0 the average is the point fidelity.
WindowStats avg_fidelity_window(const AmpConfig& cfg, double x0);
WindowStats avg_fidelity_window(const ConditionalKernel& kernel, double x0);

// Default scan limit: twice the output amplitude plus four widths.
double scan_limit(double alpha);

inline constexpr double kScanStep = 0.01;
inline constexpr double kSearchTol = 1e-6;

// Widest window around 0 whose average fidelity meets f_target. The coarse
// scan starts at 0 and stops at the first failing grid point, which keeps
// the outer high-fidelity lobes of same-parity inputs out of the window.
// Returns a zero window when the point fidelity at 0 already misses.
WindowStats max_prob_at_target(const AmpConfig& cfg, double f_target);
WindowStats max_prob_at_target(const ConditionalKernel& kernel, double f_target);

// Hand-expanded formulas for lossless p(x0) and F(x0), independent of the
// dyad engine. The opposite-parity density uses N_-(sqrt2 alpha)^{-2} for the
// vacuum-branch weight.
namespace closed_form {
double density(Pairing pairing, double alpha, double x0);
double fidelity(Pairing pairing, double alpha, double x0);
}  // namespace closed_form

}  // namespace scsamp
