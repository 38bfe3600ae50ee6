#include "scsamp/cstate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>

#include "scsamp/errors.hpp"

namespace scsamp {
namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;
constexpr double kLabelQuantum = 1e-11;

void require_modes(const Labels& labels, std::size_t modes, const char* what) {
  if (labels.size() != modes) {
    throw std::invalid_argument(std::string(what) + ": term has " + std::to_string(labels.size()) +
                                " labels, state has " + std::to_string(modes) + " modes");
  }
}

void require_mode_index(std::size_t mode, std::size_t modes, const char* what) {
  if (mode >= modes) {
    throw std::invalid_argument(std::string(what) + ": mode " + std::to_string(mode) +
                                " out of range for " + std::to_string(modes) + " modes");
  }
}

void require_loss_rate(double r2) {
  if (!(r2 >= 0.0 && r2 < 1.0)) {
    throw std::invalid_argument("loss rate r2 must lie in [0, 1), got " + std::to_string(r2));
  }
}

// Sum over modes of log <u_m|v_m>.
cplx product_overlap_exponent(const Labels& u, const Labels& v) {
  cplx e{0.0, 0.0};
  for (std::size_t m = 0; m < u.size(); ++m) e += coherent_overlap_exponent(u[m], v[m]);
  return e;
}

Labels drop_mode(const Labels& labels, std::size_t mode) {
  Labels out;
  out.reserve(labels.size() - 1);
  for (std::size_t m = 0; m < labels.size(); ++m) {
    if (m != mode) out.push_back(labels[m]);
  }
  return out;
}

void rotate_labels(Labels& labels, std::size_t i, std::size_t j) {
  const cplx a = labels[i].amp();
  const cplx b = labels[j].amp();
  labels[i] = CoherentLabel((a - b) / kSqrt2);
  labels[j] = CoherentLabel((a + b) / kSqrt2);
}

void check_pair(std::size_t modes, std::size_t i, std::size_t j, const char* what) {
  require_mode_index(i, modes, what);
  require_mode_index(j, modes, what);
  if (i == j) throw std::invalid_argument(std::string(what) + ": modes must differ");
}

// exp(-r2 (|a|^2 + |b|^2)/2 + r2 conj(b) a) for the dyad |a><b|.
cplx loss_exponent(CoherentLabel a, CoherentLabel b, double r2) {
  return -0.5 * r2 * (a.norm2() + b.norm2()) + r2 * std::conj(b.amp()) * a.amp();
}

void quantize(const Labels& labels, std::vector<std::int64_t>& key) {
  for (const auto& l : labels) {
    key.push_back(std::llround(l.amp().real() / kLabelQuantum));
    key.push_back(std::llround(l.amp().imag() / kLabelQuantum));
  }
}

}  // namespace

CoherentLabel::CoherentLabel(cplx amp) : amp_(amp) {
  if (!std::isfinite(amp.real()) || !std::isfinite(amp.imag())) {
    throw std::invalid_argument("coherent label must be finite");
  }
}

Parity opposite(Parity p) { return p == Parity::even ? Parity::odd : Parity::even; }

const char* to_string(Parity p) { return p == Parity::even ? "even" : "odd"; }

// --- PureCSS ----------------------------------------------------------------

PureCSS::PureCSS(std::size_t modes) : modes_(modes) {
  if (modes == 0) throw std::invalid_argument("PureCSS needs at least one mode");
}

PureCSS::PureCSS(std::size_t modes, std::vector<PureTerm> terms) : PureCSS(modes) {
  for (const auto& t : terms) require_modes(t.labels, modes_, "PureCSS");
  terms_ = std::move(terms);
}

PureCSS PureCSS::coherent(CoherentLabel a) { return PureCSS(1, {{1.0, {a}}}); }

void PureCSS::add_term(cplx coeff, Labels labels) {
  require_modes(labels, modes_, "PureCSS::add_term");
  terms_.push_back({coeff, std::move(labels)});
}

PureCSS PureCSS::scaled(cplx factor) const {
  PureCSS out = *this;
  for (auto& t : out.terms_) t.coeff *= factor;
  return out;
}

PureCSS PureCSS::normalized() const {
  const double n2 = norm2(*this);
  if (!(n2 > 0.0)) throw NumericError("cannot normalize a state of zero norm");
  return scaled(1.0 / std::sqrt(n2));
}

// --- DyadMix ----------------------------------------------------------------

DyadMix::DyadMix(std::size_t modes) : modes_(modes) {
  if (modes == 0) throw std::invalid_argument("DyadMix needs at least one mode");
}

DyadMix::DyadMix(std::size_t modes, std::vector<DyadTerm> terms) : DyadMix(modes) {
  for (const auto& t : terms) {
    require_modes(t.ket, modes_, "DyadMix");
    require_modes(t.bra, modes_, "DyadMix");
  }
  terms_ = std::move(terms);
}

DyadMix DyadMix::from_pure(const PureCSS& s) {
  DyadMix out(s.modes());
  out.terms_.reserve(s.size() * s.size());
  for (const auto& k : s.terms()) {
    for (const auto& b : s.terms()) {
      out.terms_.push_back({k.coeff * std::conj(b.coeff), k.labels, b.labels});
    }
  }
  return out;
}

void DyadMix::add_term(cplx coeff, Labels ket, Labels bra) {
  require_modes(ket, modes_, "DyadMix::add_term");
  require_modes(bra, modes_, "DyadMix::add_term");
  terms_.push_back({coeff, std::move(ket), std::move(bra)});
}

void DyadMix::accumulate(const DyadMix& other, cplx weight) {
  if (other.modes_ != modes_) throw std::invalid_argument("DyadMix::accumulate: mode mismatch");
  terms_.reserve(terms_.size() + other.terms_.size());
  for (const auto& t : other.terms_) terms_.push_back({weight * t.coeff, t.ket, t.bra});
}

DyadMix DyadMix::scaled(cplx factor) const {
  DyadMix out = *this;
  for (auto& t : out.terms_) t.coeff *= factor;
  return out;
}

DyadMix DyadMix::normalized() const {
  const double tr = trace(*this).real();
  if (!(tr > 0.0)) throw NumericError("cannot normalize a mixture with nonpositive trace");
  return scaled(1.0 / tr);
}

// --- scalars ----------------------------------------------------------------

cplx coherent_overlap_exponent(CoherentLabel a, CoherentLabel b) {
  return -0.5 * (a.norm2() + b.norm2()) + std::conj(a.amp()) * b.amp();
}

cplx coherent_overlap(CoherentLabel a, CoherentLabel b) {
  return std::exp(coherent_overlap_exponent(a, b));
}

cplx quadrature_wavefunction_exponent(CoherentLabel a, double x) {
  static const double log_pi_quarter = 0.25 * std::log(std::numbers::pi);
  const cplx z = a.amp();
  return -0.5 * x * x + kSqrt2 * z * x - 0.5 * z * z - 0.5 * a.norm2() - log_pi_quarter;
}

cplx quadrature_wavefunction(CoherentLabel a, double x) {
  return std::exp(quadrature_wavefunction_exponent(a, x));
}

double scs_normalization(double alpha, Parity parity) {
  // 2 - 2e^{-2a^2} = -2 expm1(-2a^2) keeps precision for small alpha.
  const double e = std::expm1(-2.0 * alpha * alpha);
  const double base = parity == Parity::even ? 4.0 + 2.0 * e : -2.0 * e;
  return 1.0 / std::sqrt(base);
}

PureCSS scs_state(double alpha, Parity parity) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw std::invalid_argument("SCS amplitude must be positive, got " + std::to_string(alpha));
  }
  const double n = scs_normalization(alpha, parity);
  const double sign = parity == Parity::even ? 1.0 : -1.0;
  return PureCSS(1, {{n, {CoherentLabel(alpha)}}, {sign * n, {CoherentLabel(-alpha)}}});
}

// --- pure states -------------------------------------------------------------

cplx inner(const PureCSS& u, const PureCSS& v) {
  if (u.modes() != v.modes()) throw std::invalid_argument("inner: mode-count mismatch");
  cplx sum{0.0, 0.0};
  for (const auto& a : u.terms()) {
    for (const auto& b : v.terms()) {
      sum += std::conj(a.coeff) * b.coeff * std::exp(product_overlap_exponent(a.labels, b.labels));
    }
  }
  return sum;
}

double norm2(const PureCSS& s) { return inner(s, s).real(); }

PureCSS tensor(const PureCSS& u, const PureCSS& v) {
  PureCSS out(u.modes() + v.modes());
  for (const auto& a : u.terms()) {
    for (const auto& b : v.terms()) {
      Labels labels = a.labels;
      labels.insert(labels.end(), b.labels.begin(), b.labels.end());
      out.add_term(a.coeff * b.coeff, std::move(labels));
    }
  }
  return out;
}

PureCSS beam_splitter_5050(const PureCSS& s, std::size_t mode_i, std::size_t mode_j) {
  check_pair(s.modes(), mode_i, mode_j, "beam_splitter_5050");
  std::vector<PureTerm> terms(s.terms().begin(), s.terms().end());
  for (auto& t : terms) rotate_labels(t.labels, mode_i, mode_j);
  return PureCSS(s.modes(), std::move(terms));
}

PureProjection homodyne_project(const PureCSS& s, std::size_t mode, double x0) {
  require_mode_index(mode, s.modes(), "homodyne_project");
  if (s.modes() < 2) throw std::invalid_argument("homodyne_project: need at least two modes");
  PureCSS reduced(s.modes() - 1);
  for (const auto& t : s.terms()) {
    reduced.add_term(t.coeff * quadrature_wavefunction(t.labels[mode], x0), drop_mode(t.labels, mode));
  }
  const double density = norm2(reduced);
  return {std::move(reduced), density};
}

// --- dyad mixtures -------------------------------------------------------------

DyadMix tensor(const DyadMix& u, const DyadMix& v) {
  DyadMix out(u.modes() + v.modes());
  for (const auto& a : u.terms()) {
    for (const auto& b : v.terms()) {
      Labels ket = a.ket;
      ket.insert(ket.end(), b.ket.begin(), b.ket.end());
      Labels bra = a.bra;
      bra.insert(bra.end(), b.bra.begin(), b.bra.end());
      out.add_term(a.coeff * b.coeff, std::move(ket), std::move(bra));
    }
  }
  return out;
}

DyadMix beam_splitter_5050(const DyadMix& m, std::size_t mode_i, std::size_t mode_j) {
  check_pair(m.modes(), mode_i, mode_j, "beam_splitter_5050");
  std::vector<DyadTerm> terms(m.terms().begin(), m.terms().end());
  for (auto& t : terms) {
    rotate_labels(t.ket, mode_i, mode_j);
    rotate_labels(t.bra, mode_i, mode_j);
  }
  return DyadMix(m.modes(), std::move(terms));
}

DyadMix loss_channel_mode(const DyadMix& m, std::size_t mode, double r2) {
  require_loss_rate(r2);
  require_mode_index(mode, m.modes(), "loss_channel_mode");
  if (r2 == 0.0) return m;
  const double t = std::sqrt(1.0 - r2);
  std::vector<DyadTerm> terms(m.terms().begin(), m.terms().end());
  for (auto& term : terms) {
    term.coeff *= std::exp(loss_exponent(term.ket[mode], term.bra[mode], r2));
    term.ket[mode] = CoherentLabel(t * term.ket[mode].amp());
    term.bra[mode] = CoherentLabel(t * term.bra[mode].amp());
  }
  return DyadMix(m.modes(), std::move(terms));
}

DyadMix loss_channel(const DyadMix& m, double r2) {
  require_loss_rate(r2);
  if (r2 == 0.0) return m;
  const double t = std::sqrt(1.0 - r2);
  std::vector<DyadTerm> terms(m.terms().begin(), m.terms().end());
  for (auto& term : terms) {
    cplx e{0.0, 0.0};
    for (std::size_t k = 0; k < m.modes(); ++k) {
      e += loss_exponent(term.ket[k], term.bra[k], r2);
      term.ket[k] = CoherentLabel(t * term.ket[k].amp());
      term.bra[k] = CoherentLabel(t * term.bra[k].amp());
    }
    term.coeff *= std::exp(e);
  }
  return DyadMix(m.modes(), std::move(terms));
}

DyadMix loss_channel(const PureCSS& s, double r2) { return loss_channel(DyadMix::from_pure(s), r2); }

cplx trace(const DyadMix& m) {
  cplx sum{0.0, 0.0};
  for (const auto& t : m.terms()) sum += t.coeff * std::exp(product_overlap_exponent(t.bra, t.ket));
  return sum;
}

cplx expectation(const DyadMix& m, const PureCSS& target) {
  if (m.modes() != target.modes()) throw std::invalid_argument("expectation: mode-count mismatch");
  // <t|k> and <b|t> per target term, combined in the exponent.
  cplx sum{0.0, 0.0};
  for (const auto& d : m.terms()) {
    cplx left{0.0, 0.0};
    cplx right{0.0, 0.0};
    for (const auto& t : target.terms()) {
      left += std::conj(t.coeff) * std::exp(product_overlap_exponent(t.labels, d.ket));
      right += t.coeff * std::exp(product_overlap_exponent(d.bra, t.labels));
    }
    sum += d.coeff * left * right;
  }
  return sum;
}

double fidelity_with_pure(const DyadMix& m, const PureCSS& target) {
  const double tr = trace(m).real();
  const double tn = norm2(target);
  if (!(tr > 0.0) || !(tn > 0.0)) throw NumericError("fidelity_with_pure: vanishing trace or target norm");
  return expectation(m, target).real() / (tr * tn);
}

MixedProjection homodyne_project_mixed(const DyadMix& m, std::size_t mode, double x0) {
  require_mode_index(mode, m.modes(), "homodyne_project_mixed");
  if (m.modes() < 2) throw std::invalid_argument("homodyne_project_mixed: need at least two modes");
  DyadMix reduced(m.modes() - 1);
  for (const auto& t : m.terms()) {
    const cplx e = quadrature_wavefunction_exponent(t.ket[mode], x0) +
                   std::conj(quadrature_wavefunction_exponent(t.bra[mode], x0));
    reduced.add_term(t.coeff * std::exp(e), drop_mode(t.ket, mode), drop_mode(t.bra, mode));
  }
  const double density = trace(reduced).real();
  return {std::move(reduced), density};
}

DyadMix prune(const DyadMix& m, double tol) {
  if (!(tol >= 0.0)) throw std::invalid_argument("prune: tolerance must be nonnegative");
  std::vector<DyadTerm> kept;
  kept.reserve(m.size());
  for (const auto& t : m.terms()) {
    if (std::abs(t.coeff) >= tol && t.coeff != cplx{0.0, 0.0}) kept.push_back(t);
  }
  return DyadMix(m.modes(), std::move(kept));
}

DyadMix canonicalize(const DyadMix& m) {
  std::map<std::vector<std::int64_t>, DyadTerm> merged;
  std::vector<std::int64_t> key;
  for (const auto& t : m.terms()) {
    key.clear();
    quantize(t.ket, key);
    quantize(t.bra, key);
    auto [it, inserted] = merged.try_emplace(key, t);
    if (!inserted) it->second.coeff += t.coeff;
  }
  std::vector<DyadTerm> terms;
  terms.reserve(merged.size());
  for (auto& [k, t] : merged) terms.push_back(std::move(t));
  return DyadMix(m.modes(), std::move(terms));
}

std::vector<CoherentLabel> label_set(const DyadMix& m) {
  std::map<std::pair<std::int64_t, std::int64_t>, CoherentLabel> seen;
  auto visit = [&](const Labels& labels) {
    for (const auto& l : labels) {
      seen.try_emplace({std::llround(l.amp().real() / kLabelQuantum), std::llround(l.amp().imag() / kLabelQuantum)},
                       l);
    }
  };
  for (const auto& t : m.terms()) {
    visit(t.ket);
    visit(t.bra);
  }
  std::vector<CoherentLabel> out;
  out.reserve(seen.size());
  for (const auto& [k, l] : seen) out.push_back(l);
  return out;
}

}  // namespace scsamp
