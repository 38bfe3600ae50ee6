#include "scsamp/fock_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <unsupported/Eigen/MatrixFunctions>

#include "scsamp/errors.hpp"

namespace scsamp::fock {
namespace {

void require_cutoff(int n_cut) {
  if (n_cut < 1) throw std::invalid_argument("Fock cutoff must be at least 1");
}

// Fock coefficients up to n_cut, plus the exact tail sum_{n >= n_cut} |c_n|^2.
struct CoherentExpansion {
  FockVec coeffs;
  double tail;
};

CoherentExpansion expand_coherent(cplx a, int n_cut) {
  require_cutoff(n_cut);
  CoherentExpansion out{FockVec(n_cut), 0.0};
  cplx c = std::exp(-0.5 * std::norm(a));
  for (int n = 0; n < n_cut; ++n) {
    if (n > 0) c *= a / std::sqrt(static_cast<double>(n));
    out.coeffs(n) = c;
  }
  // Continue the recurrence past the cutoff until terms stop contributing.
  double tail = 0.0;
  for (int n = n_cut; n < n_cut + 4000; ++n) {
    c *= a / std::sqrt(static_cast<double>(n));
    const double w = std::norm(c);
    tail += w;
    if (static_cast<double>(n) > std::norm(a) && w < 1e-300 + 1e-18 * tail) break;
  }
  out.tail = tail;
  return out;
}

double log_binomial(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

Eigen::MatrixXd kraus_matrix(double r2, int k, int n_cut) {
  Eigen::MatrixXd kmat = Eigen::MatrixXd::Zero(n_cut, n_cut);
  const double t2 = 1.0 - r2;
  for (int n = k; n < n_cut; ++n) {
    // <n-k| K_k |n> = sqrt(C(n,k) r^{2k} t^{2(n-k)})
    double log_w = log_binomial(n, k);
    if (k > 0) log_w += k * std::log(r2);
    if (n - k > 0) log_w += (n - k) * std::log(t2);
    kmat(n - k, n) = std::exp(0.5 * log_w);
  }
  return kmat;
}

}  // namespace

FockVec coherent_fock(cplx a, int n_cut) {
  CoherentExpansion e = expand_coherent(a, n_cut);
  if (e.tail >= kTailTol) {
    throw NumericError("Fock cutoff " + std::to_string(n_cut) + " too small for amplitude |a| = " +
                       std::to_string(std::abs(a)) + " (tail " + std::to_string(e.tail) + ")");
  }
  return std::move(e.coeffs);
}

double coherent_tail(cplx a, int n_cut) { return expand_coherent(a, n_cut).tail; }

int auto_cutoff(double max_amplitude, int start) {
  require_cutoff(start);
  int n = start;
  while (coherent_tail(max_amplitude, n) >= kTailTol) {
    if (n > (1 << 20)) throw NumericError("auto_cutoff: amplitude too large");
    n *= 2;
  }
  return n;
}

FockVec to_fock(const PureCSS& single_mode, int n_cut) {
  if (single_mode.modes() != 1) throw std::invalid_argument("to_fock: expected a single-mode state");
  FockVec v = FockVec::Zero(n_cut);
  for (const auto& t : single_mode.terms()) v += t.coeff * coherent_fock(t.labels[0].amp(), n_cut);
  return v;
}

FockMat to_fock_two_mode(const PureCSS& two_mode, int n_cut) {
  if (two_mode.modes() != 2) throw std::invalid_argument("to_fock_two_mode: expected a two-mode state");
  FockMat a = FockMat::Zero(n_cut, n_cut);
  for (const auto& t : two_mode.terms()) {
    a += t.coeff * coherent_fock(t.labels[0].amp(), n_cut) * coherent_fock(t.labels[1].amp(), n_cut).transpose();
  }
  return a;
}

FockVec scs_fock(double alpha, Parity parity, int n_cut) {
  // Build from the coefficients directly: only the parity-matching entries survive.
  const FockVec c = coherent_fock(alpha, n_cut);
  FockVec v = FockVec::Zero(n_cut);
  const int keep = parity == Parity::even ? 0 : 1;
  for (int n = keep; n < n_cut; n += 2) v(n) = 2.0 * c(n);
  return v * scs_normalization(alpha, parity);
}

// --- beam splitter ------------------------------------------------------------

BeamSplitter::BeamSplitter(int n_cut) : n_cut_(n_cut) {
  require_cutoff(n_cut);
  const double theta = std::numbers::pi / 4.0;
  blocks_.reserve(n_cut);
  for (int n = 0; n < n_cut; ++n) {
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(n + 1, n + 1);
    for (int k = 0; k <= n; ++k) {
      // a0 a1^dagger |k, n-k> = sqrt(k) sqrt(n-k+1) |k-1, n-k+1>
      if (k > 0) g(k - 1, k) += theta * std::sqrt(double(k) * double(n - k + 1));
      // a0^dagger a1 |k, n-k> = sqrt(k+1) sqrt(n-k) |k+1, n-k-1>
      if (k < n) g(k + 1, k) -= theta * std::sqrt(double(k + 1) * double(n - k));
    }
    blocks_.push_back(g.exp());
  }
}

FockMat BeamSplitter::apply(const FockMat& amplitudes) const {
  if (amplitudes.rows() != n_cut_ || amplitudes.cols() != n_cut_) {
    throw std::invalid_argument("BeamSplitter::apply: cutoff mismatch");
  }
  FockMat out = FockMat::Zero(n_cut_, n_cut_);
  for (int n = 0; n < n_cut_; ++n) {
    Eigen::VectorXcd v(n + 1);
    for (int k = 0; k <= n; ++k) v(k) = amplitudes(k, n - k);
    const Eigen::VectorXcd w = blocks_[n] * v;
    for (int k = 0; k <= n; ++k) out(k, n - k) = w(k);
  }
  return out;
}

FockMat BeamSplitter::dense() const {
  const int dim = n_cut_ * n_cut_;
  FockMat u = FockMat::Zero(dim, dim);
  for (int n = 0; n < n_cut_; ++n) {
    for (int i = 0; i <= n; ++i) {
      for (int j = 0; j <= n; ++j) u(i * n_cut_ + (n - i), j * n_cut_ + (n - j)) = blocks_[n](i, j);
    }
  }
  return u;
}

FockMat BeamSplitter::apply_density(const FockMat& rho) const {
  const int dim = n_cut_ * n_cut_;
  if (rho.rows() != dim || rho.cols() != dim) throw std::invalid_argument("apply_density: cutoff mismatch");
  const FockMat u = dense();
  return u * rho * u.adjoint();
}

// --- homodyne -------------------------------------------------------------------

Eigen::VectorXd quadrature_eigvec(double x, int n_cut) {
  require_cutoff(n_cut);
  Eigen::VectorXd q(n_cut);
  q(0) = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * x * x);
  if (n_cut > 1) q(1) = std::numbers::sqrt2 * x * q(0);
  for (int n = 1; n + 1 < n_cut; ++n) {
    q(n + 1) = std::sqrt(2.0 / (n + 1)) * x * q(n) - std::sqrt(double(n) / (n + 1)) * q(n - 1);
  }
  return q;
}

PureFockProjection homodyne_project_fock(const FockMat& amplitudes, int mode, double x) {
  if (mode != 0 && mode != 1) throw std::invalid_argument("homodyne_project_fock: mode must be 0 or 1");
  const Eigen::VectorXcd q = quadrature_eigvec(x, static_cast<int>(amplitudes.rows())).cast<cplx>();
  FockVec r = mode == 0 ? FockVec(amplitudes.transpose() * q) : FockVec(amplitudes * q);
  const double density = r.squaredNorm();
  return {std::move(r), density};
}

MixedFockProjection homodyne_project_fock_density(const FockMat& rho, int n_cut, int mode, double x) {
  if (mode != 0 && mode != 1) throw std::invalid_argument("homodyne_project_fock_density: mode must be 0 or 1");
  if (rho.rows() != n_cut * n_cut) throw std::invalid_argument("homodyne_project_fock_density: cutoff mismatch");
  const Eigen::VectorXd q = quadrature_eigvec(x, n_cut);
  FockMat out = FockMat::Zero(n_cut, n_cut);
  auto index = [&](int measured, int kept) { return mode == 0 ? measured * n_cut + kept : kept * n_cut + measured; };
  for (int a = 0; a < n_cut; ++a) {
    for (int b = 0; b < n_cut; ++b) {
      const double w = q(a) * q(b);
      for (int i = 0; i < n_cut; ++i) {
        for (int j = 0; j < n_cut; ++j) out(i, j) += w * rho(index(a, i), index(b, j));
      }
    }
  }
  const double density = out.trace().real();
  return {std::move(out), density};
}

// --- loss -------------------------------------------------------------------------

std::vector<Eigen::MatrixXd> kraus_operators(double r2, int n_cut) {
  if (!(r2 >= 0.0 && r2 < 1.0)) throw std::invalid_argument("loss rate r2 must lie in [0, 1)");
  require_cutoff(n_cut);
  std::vector<Eigen::MatrixXd> ops;
  ops.push_back(kraus_matrix(r2, 0, n_cut));
  if (r2 == 0.0) return ops;
  for (int k = 1; k < n_cut; ++k) {
    Eigen::MatrixXd kmat = kraus_matrix(r2, k, n_cut);
    if (kmat.cwiseAbs2().maxCoeff() < kKrausWeightTol) break;
    ops.push_back(std::move(kmat));
  }
  return ops;
}

std::vector<FockVec> loss_branches(const FockVec& state, double r2) {
  if (!(r2 >= 0.0 && r2 < 1.0)) throw std::invalid_argument("loss rate r2 must lie in [0, 1)");
  const int n_cut = static_cast<int>(state.size());
  if (r2 == 0.0) return {state};
  std::vector<FockVec> out;
  double previous = 0.0;
  for (int k = 0; k < n_cut; ++k) {
    FockVec b = kraus_matrix(r2, k, n_cut).cast<cplx>() * state;
    const double w = b.squaredNorm();
    if (k > 0 && w < kKrausWeightTol && w <= previous) break;
    out.push_back(std::move(b));
    previous = w;
  }
  return out;
}

FockMat loss_kraus(const FockVec& state, double r2) {
  const int n_cut = static_cast<int>(state.size());
  FockMat rho = FockMat::Zero(n_cut, n_cut);
  for (const auto& b : loss_branches(state, r2)) rho += b * b.adjoint();
  return rho;
}

FockMat loss_kraus(const FockMat& rho, double r2) {
  const int n_cut = static_cast<int>(rho.rows());
  FockMat out = FockMat::Zero(n_cut, n_cut);
  for (const auto& k : kraus_operators(r2, n_cut)) {
    const FockMat kc = k.cast<cplx>();
    out += kc * rho * kc.adjoint();
  }
  return out;
}

// --- Wigner -------------------------------------------------------------------------

cplx wigner_parity_complex(const FockMat& rho, cplx beta, int pad_to) {
  const int n_cut = static_cast<int>(rho.rows());
  const int dim = std::max(pad_to, std::max(2 * n_cut, n_cut + 40));
  FockMat gen = FockMat::Zero(dim, dim);
  for (int n = 0; n + 1 < dim; ++n) {
    const double s = std::sqrt(double(n + 1));
    // D(-beta) = exp(-beta a^dagger + conj(beta) a)
    gen(n + 1, n) = -beta * s;
    gen(n, n + 1) = std::conj(beta) * s;
  }
  const FockMat d = gen.exp();
  FockMat big = FockMat::Zero(dim, dim);
  big.topLeftCorner(n_cut, n_cut) = rho;
  const FockMat shifted = d * big * d.adjoint();
  cplx sum{0.0, 0.0};
  for (int n = 0; n < dim; ++n) sum += (n % 2 == 0 ? 1.0 : -1.0) * shifted(n, n);
  return 2.0 / std::numbers::pi * sum;
}

double wigner_parity(const FockMat& rho, cplx beta, int pad_to) {
  return wigner_parity_complex(rho, beta, pad_to).real();
}

// --- pipeline -------------------------------------------------------------------------

Pipeline::Pipeline(const AmpConfig& cfg, int n_cut) : n_cut_(n_cut) {
  cfg.validate();
  const auto [p0, p1] = cfg.input_parities();
  const auto in0 = loss_branches(scs_fock(cfg.alpha, p0, n_cut), cfg.loss_r2);
  const auto in1 = loss_branches(scs_fock(cfg.alpha, p1, n_cut), cfg.loss_r2);
  const BeamSplitter bs(n_cut);
  branches_.reserve(in0.size() * in1.size());
  for (const auto& a : in0) {
    for (const auto& b : in1) branches_.push_back(bs.apply(a * b.transpose()));
  }
  target_ = scs_fock(cfg.target_amplitude(), cfg.target_parity(), n_cut);
  target_.normalize();
}

OraclePoint Pipeline::evaluate(double x0) const {
  const Eigen::VectorXcd q = quadrature_eigvec(x0, n_cut_).cast<cplx>();
  double density = 0.0;
  double overlap = 0.0;
  for (const auto& a : branches_) {
    const FockVec r = a.transpose() * q;
    density += r.squaredNorm();
    overlap += std::norm(target_.dot(r));
  }
  return {density, overlap / density};
}

FockMat Pipeline::conditional_state(double x0) const {
  const Eigen::VectorXcd q = quadrature_eigvec(x0, n_cut_).cast<cplx>();
  FockMat rho = FockMat::Zero(n_cut_, n_cut_);
  for (const auto& a : branches_) {
    const FockVec r = a.transpose() * q;
    rho += r * r.adjoint();
  }
  return rho;
}

}  // namespace scsamp::fock
