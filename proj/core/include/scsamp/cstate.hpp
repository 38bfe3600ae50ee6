#pragma once

// Exact algebra over finite superpositions of coherent states.
//
// Every state in this library is a finite sum of coherent-state products,
// either as kets (PureCSS) or as dyads |ket><bra| (DyadMix). All operations
// used by the amplification protocol (overlaps, 50:50 beam splitter,
// homodyne projection, beam-splitter loss) map such sums to such sums in
// closed form, so nothing here truncates a Hilbert space.
//
// Conventions:
//   - quadrature x = (a + a^dagger) / sqrt(2), so <x|0> = pi^{-1/4} e^{-x^2/2};
//   - the 50:50 beam splitter maps labels (a, b) -> ((a - b)/sqrt2, (a + b)/sqrt2);
//   - states need not be normalized; normalization is always explicit.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace scsamp {

using cplx = std::complex<double>;

inline constexpr double kDefaultPruneTol = 1e-14;

// Complex amplitude labeling a coherent state |a>. Always finite.
class CoherentLabel {
 public:
  CoherentLabel() = default;
  CoherentLabel(cplx amp);  // NOLINT(google-explicit-constructor)
  CoherentLabel(double amp) : CoherentLabel(cplx{amp, 0.0}) {}  // NOLINT

  cplx amp() const { return amp_; }
  double norm2() const { return std::norm(amp_); }

  friend bool operator==(const CoherentLabel&, const CoherentLabel&) = default;

 private:
  cplx amp_{0.0, 0.0};
};

using Labels = std::vector<CoherentLabel>;

enum class Parity { even, odd };

Parity opposite(Parity p);
const char* to_string(Parity p);

struct PureTerm {
  cplx coeff;
  Labels labels;
};

// Sum_i c_i |a_{i,1}> (x) ... (x) |a_{i,M}>.
class PureCSS {
 public:
  explicit PureCSS(std::size_t modes);
  PureCSS(std::size_t modes, std::vector<PureTerm> terms);

  static PureCSS coherent(CoherentLabel a);

  std::size_t modes() const { return modes_; }
  std::span<const PureTerm> terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  void add_term(cplx coeff, Labels labels);

  PureCSS scaled(cplx factor) const;
  PureCSS normalized() const;

 private:
  std::size_t modes_;
  std::vector<PureTerm> terms_;
};

struct DyadTerm {
  cplx coeff;
  Labels ket;
  Labels bra;
};

// Sum_k c_k |ket_k><bra_k| over M modes.
class DyadMix {
 public:
  explicit DyadMix(std::size_t modes);
  DyadMix(std::size_t modes, std::vector<DyadTerm> terms);

  // |s><s| expanded term by term.
  static DyadMix from_pure(const PureCSS& s);

  std::size_t modes() const { return modes_; }
  std::span<const DyadTerm> terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  void add_term(cplx coeff, Labels ket, Labels bra);
  // Appends every term of other (same mode count) scaled by weight.
  void accumulate(const DyadMix& other, cplx weight = 1.0);

  DyadMix scaled(cplx factor) const;
  // Divides by the (real part of the) trace. Throws NumericError on a
  // vanishing trace.
  DyadMix normalized() const;

 private:
  std::size_t modes_;
  std::vector<DyadTerm> terms_;
};

// ---------------------------------------------------------------------------
// Scalars

// log <a|b> = -|a|^2/2 - |b|^2/2 + conj(a) b.
cplx coherent_overlap_exponent(CoherentLabel a, CoherentLabel b);
cplx coherent_overlap(CoherentLabel a, CoherentLabel b);

// <x|a> = pi^{-1/4} exp(-x^2/2 + sqrt2 a x - a^2/2 - |a|^2/2).
cplx quadrature_wavefunction_exponent(CoherentLabel a, double x);
cplx quadrature_wavefunction(CoherentLabel a, double x);

// N_pm(alpha) = [2 pm 2 exp(-2 alpha^2)]^{-1/2}.
double scs_normalization(double alpha, Parity parity);

// N_pm(alpha)(|alpha> pm |-alpha>), alpha > 0.
PureCSS scs_state(double alpha, Parity parity);

// ---------------------------------------------------------------------------
// Pure states

cplx inner(const PureCSS& u, const PureCSS& v);
double norm2(const PureCSS& s);
PureCSS tensor(const PureCSS& u, const PureCSS& v);
PureCSS beam_splitter_5050(const PureCSS& s, std::size_t mode_i, std::size_t mode_j);

struct PureProjection {
  PureCSS reduced;  // unnormalized, one mode fewer
  double density;   // squared norm of reduced
};

// Projects `mode` onto the quadrature eigenstate <x0|. Requires >= 2 modes.
PureProjection homodyne_project(const PureCSS& s, std::size_t mode, double x0);

// ---------------------------------------------------------------------------
// Dyad mixtures

DyadMix tensor(const DyadMix& u, const DyadMix& v);
DyadMix beam_splitter_5050(const DyadMix& m, std::size_t mode_i, std::size_t mode_j);

// Beam-splitter photon loss with rate r2 applied to every mode:
//   |a><b| -> exp(-r2 (|a|^2 + |b|^2)/2 + r2 conj(b) a) |t a><t b|,  t = sqrt(1 - r2).
DyadMix loss_channel(const DyadMix& m, double r2);
DyadMix loss_channel(const PureCSS& s, double r2);
// Same map restricted to one mode.
DyadMix loss_channel_mode(const DyadMix& m, std::size_t mode, double r2);

cplx trace(const DyadMix& m);
// <target| m |target> without any normalization.
cplx expectation(const DyadMix& m, const PureCSS& target);
// <target|m|target> / (tr(m) <target|target>).
double fidelity_with_pure(const DyadMix& m, const PureCSS& target);

struct MixedProjection {
  DyadMix reduced;  // unnormalized, one mode fewer
  double density;   // real part of tr(reduced)
};

MixedProjection homodyne_project_mixed(const DyadMix& m, std::size_t mode, double x0);

// Drops terms whose |coeff| (coherent dyads have unit operator norm) is below
// tol. The trace changes by at most tol per dropped term.
DyadMix prune(const DyadMix& m, double tol = kDefaultPruneTol);

// Merges terms with identical (ket, bra) labels and sorts them
// lexicographically on (Re, Im) of each label. Labels closer than ~1e-11 are
// treated as identical.
DyadMix canonicalize(const DyadMix& m);

// Distinct single-mode label values appearing in any ket or bra.
std::vector<CoherentLabel> label_set(const DyadMix& m);

}  // namespace scsamp
