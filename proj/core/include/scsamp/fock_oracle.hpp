#pragma once

// Brute-force truncated Fock-basis model of the amplification pipeline, used
// to validate the closed-form coherent-state engine. Nothing here is shared
// with cstate.cpp beyond the physical conventions (x = (a + a^dagger)/sqrt2,
// beam-splitter label map (a, b) -> ((a - b)/sqrt2, (a + b)/sqrt2)).
//
// Two-mode pure states are stored as an n_cut x n_cut amplitude matrix
// A(n0, n1); two-mode density operators as n_cut^2 x n_cut^2 matrices with
// row index n0 * n_cut + n1.

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "scsamp/cstate.hpp"
#include "scsamp/protocol.hpp"

namespace scsamp::fock {

using FockVec = Eigen::VectorXcd;
using FockMat = Eigen::MatrixXcd;

inline constexpr int kDefaultCutoff = 40;
inline constexpr double kTailTol = 1e-10;
inline constexpr double kKrausWeightTol = 1e-14;

// e^{-|a|^2/2} a^n / sqrt(n!) for n < n_cut. Throws NumericError when the
// norm deficit reaches kTailTol.
FockVec coherent_fock(cplx a, int n_cut);
// Norm deficit 1 - ||coherent_fock(a, n_cut)||^2 without the check.
double coherent_tail(cplx a, int n_cut);
// Doubles start until the tail of every amplitude is below kTailTol.
int auto_cutoff(double max_amplitude, int start = kDefaultCutoff);

// Single-mode superposition expanded in the Fock basis.
FockVec to_fock(const PureCSS& single_mode, int n_cut);
// Two-mode superposition as an amplitude matrix.
FockMat to_fock_two_mode(const PureCSS& two_mode, int n_cut);
FockVec scs_fock(double alpha, Parity parity, int n_cut);

// 50:50 beam splitter U = exp(pi/4 (a0 a1^dagger - a0^dagger a1)), built by
// exponentiating the generator on each fixed-total-photon block. Components
// whose total photon number is >= n_cut are discarded.
class BeamSplitter {
 public:
  explicit BeamSplitter(int n_cut);

  int cutoff() const { return n_cut_; }
  FockMat apply(const FockMat& amplitudes) const;
  // U rho U^dagger for a two-mode density (n_cut^2 x n_cut^2).
  FockMat apply_density(const FockMat& rho) const;
  // Dense n_cut^2 x n_cut^2 matrix of U (truncated).
  FockMat dense() const;

 private:
  int n_cut_;
  std::vector<Eigen::MatrixXd> blocks_;  // block n has basis |k, n-k>, k = 0..n
};

// <x|n> for n < n_cut via the normalized Hermite-function recurrence.
Eigen::VectorXd quadrature_eigvec(double x, int n_cut);

struct PureFockProjection {
  FockVec reduced;
  double density;
};
struct MixedFockProjection {
  FockMat reduced;
  double density;
};

PureFockProjection homodyne_project_fock(const FockMat& amplitudes, int mode, double x);
MixedFockProjection homodyne_project_fock_density(const FockMat& rho, int n_cut, int mode, double x);

// Loss Kraus set K_k = r^k t^{n} a^k / sqrt(k!) (t^n acting after a^k), in
// increasing k until the added weight drops below kKrausWeightTol.
std::vector<Eigen::MatrixXd> kraus_operators(double r2, int n_cut);
FockMat loss_kraus(const FockVec& state, double r2);
FockMat loss_kraus(const FockMat& rho, double r2);
// The unnormalized pure branches K_k |state>, whose outer products sum to loss_kraus(state).
std::vector<FockVec> loss_branches(const FockVec& state, double r2);

// Displaced-parity Wigner function (2/pi) tr[rho D(beta) P D(beta)^dagger],
// normalized so that its integral over d^2 beta is tr(rho). The displacement
// is built on a padded space of size pad_to.
double wigner_parity(const FockMat& rho, cplx beta, int pad_to = 0);
cplx wigner_parity_complex(const FockMat& rho, cplx beta, int pad_to = 0);

struct OraclePoint {
  double density;
  double fidelity;
};

// The whole lossy protocol in the Fock basis: loss branches on each input,
// beam splitter on every branch pair, homodyne on mode 0, fidelity of the
// mode-1 state to cfg.target_state().
class Pipeline {
 public:
  Pipeline(const AmpConfig& cfg, int n_cut = kDefaultCutoff);

  OraclePoint evaluate(double x0) const;
  FockMat conditional_state(double x0) const;  // unnormalized

 private:
  int n_cut_;
  std::vector<FockMat> branches_;  // after the beam splitter
  FockVec target_;
};

}  // namespace scsamp::fock
