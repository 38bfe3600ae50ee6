#include "scsamp/protocol.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <stdexcept>

#include "scsamp/errors.hpp"
#include "scsamp/quadrature.hpp"

namespace scsamp {
namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

void require_target(double f_target) {
  if (!(f_target > 0.0 && f_target < 1.0)) {
    throw std::invalid_argument("target fidelity must lie in (0, 1)");
  }
}

// Window integrals of p and pF over [-hi, -lo] and [lo, hi].
struct Segment {
  double probability;
  double numerator;
};

Segment integrate_symmetric(const ConditionalKernel& k, double lo, double hi) {
  auto p = [&](double x) { return k.density(x); };
  auto pf = [&](double x) { return k.weighted_fidelity(x); };
  const double prob = quad::integrate(p, lo, hi).value + quad::integrate(p, -hi, -lo).value;
  const double num = quad::integrate(pf, lo, hi).value + quad::integrate(pf, -hi, -lo).value;
  return {prob, num};
}

}  // namespace

std::string to_string(Pairing p) {
  switch (p) {
    case Pairing::odd_odd:
      return "odd-odd";
    case Pairing::even_even:
      return "even-even";
    case Pairing::even_odd:
      return "even-odd";
  }
  return "?";
}

Pairing parse_pairing(std::string_view text) {
  if (text == "odd-odd") return Pairing::odd_odd;
  if (text == "even-even") return Pairing::even_even;
  if (text == "even-odd") return Pairing::even_odd;
  throw std::invalid_argument("unknown pairing '" + std::string(text) + "'");
}

void AmpConfig::validate() const {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw std::invalid_argument("alpha must be positive and finite");
  if (!(loss_r2 >= 0.0 && loss_r2 < 1.0)) throw std::invalid_argument("loss r2 must lie in [0, 1)");
}

std::pair<Parity, Parity> AmpConfig::input_parities() const {
  switch (pairing) {
    case Pairing::odd_odd:
      return {Parity::odd, Parity::odd};
    case Pairing::even_even:
      return {Parity::even, Parity::even};
    case Pairing::even_odd:
      return {Parity::even, Parity::odd};
  }
  throw std::logic_error("unreachable pairing");
}

Parity AmpConfig::target_parity() const {
  return pairing == Pairing::even_odd ? Parity::odd : Parity::even;
}

double AmpConfig::target_amplitude() const {
  const double t = attenuated_target ? std::sqrt(1.0 - loss_r2) : 1.0;
  return kSqrt2 * t * alpha;
}

PureCSS AmpConfig::target_state() const { return scs_state(target_amplitude(), target_parity()); }

PureCSS input_pair(const AmpConfig& cfg) {
  cfg.validate();
  const auto [p0, p1] = cfg.input_parities();
  return tensor(scs_state(cfg.alpha, p0), scs_state(cfg.alpha, p1));
}

DyadMix post_beam_splitter(const AmpConfig& cfg) {
  DyadMix rho = loss_channel(input_pair(cfg), cfg.loss_r2);
  return beam_splitter_5050(rho, 0, 1);
}

std::variant<PureCSS, DyadMix> projected_state(const AmpConfig& cfg, double x0) {
  if (cfg.lossless()) {
    const PureCSS after = beam_splitter_5050(input_pair(cfg), 0, 1);
    return homodyne_project(after, kMeasuredMode, x0).reduced.normalized();
  }
  return conditional_dyads(cfg, x0).normalized();
}

DyadMix conditional_dyads(const AmpConfig& cfg, double x0) {
  return homodyne_project_mixed(post_beam_splitter(cfg), kMeasuredMode, x0).reduced;
}

double density_p(const AmpConfig& cfg, double x0) {
  if (cfg.lossless()) {
    return homodyne_project(beam_splitter_5050(input_pair(cfg), 0, 1), kMeasuredMode, x0).density;
  }
  return homodyne_project_mixed(post_beam_splitter(cfg), kMeasuredMode, x0).density;
}

double fidelity_pointwise(const AmpConfig& cfg, double x0) {
  const PureCSS target = cfg.target_state();
  if (cfg.lossless()) {
    const auto proj = homodyne_project(beam_splitter_5050(input_pair(cfg), 0, 1), kMeasuredMode, x0);
    if (!(proj.density > 0.0)) throw NumericError("fidelity at an outcome of zero density");
    return std::norm(inner(target, proj.reduced)) / (proj.density * norm2(target));
  }
  return fidelity_with_pure(conditional_dyads(cfg, x0), target);
}

// --- ConditionalKernel ---------------------------------------------------------

ConditionalKernel::ConditionalKernel(const AmpConfig& cfg) : cfg_(cfg) {
  cfg_.validate();
  const PureCSS target = cfg_.target_state();
  target_norm2_ = norm2(target);
  const DyadMix rho = canonicalize(post_beam_splitter(cfg_));

  std::map<std::array<std::int64_t, 4>, std::size_t> index;
  for (const auto& t : rho.terms()) {
    const CoherentLabel k = t.ket[kMeasuredMode];
    const CoherentLabel b = t.bra[kMeasuredMode];
    const std::array<std::int64_t, 4> key{
        std::llround(k.amp().real() * 1e11), std::llround(k.amp().imag() * 1e11),
        std::llround(b.amp().real() * 1e11), std::llround(b.amp().imag() * 1e11)};
    auto [it, inserted] = index.try_emplace(key, groups_.size());
    if (inserted) groups_.push_back({k, b, {}, {}, DyadMix(1)});
    groups_[it->second].residual.add_term(t.coeff, {t.ket[1]}, {t.bra[1]});
  }
  for (auto& g : groups_) {
    g.trace = trace(g.residual);
    g.overlap = expectation(g.residual, target);
  }
}

cplx ConditionalKernel::weight(const Group& g, double x) const {
  return std::exp(quadrature_wavefunction_exponent(g.ket, x) +
                  std::conj(quadrature_wavefunction_exponent(g.bra, x)));
}

double ConditionalKernel::density(double x) const {
  cplx sum{0.0, 0.0};
  for (const auto& g : groups_) sum += weight(g, x) * g.trace;
  return sum.real();
}

double ConditionalKernel::weighted_fidelity(double x) const {
  cplx sum{0.0, 0.0};
  for (const auto& g : groups_) sum += weight(g, x) * g.overlap;
  return sum.real() / target_norm2_;
}

double ConditionalKernel::fidelity(double x) const {
  const double p = density(x);
  if (!(p > 0.0)) throw NumericError("fidelity at an outcome of zero density");
  return weighted_fidelity(x) / p;
}

DyadMix ConditionalKernel::conditional_state(double x) const {
  DyadMix out(1);
  for (const auto& g : groups_) out.accumulate(g.residual, weight(g, x));
  return out;
}

// --- windows --------------------------------------------------------------------

WindowStats avg_fidelity_window(const ConditionalKernel& kernel, double x0) {
  if (!(x0 >= 0.0)) throw std::invalid_argument("window half-width must be nonnegative");
  if (x0 == 0.0) return {0.0, 0.0, kernel.fidelity(0.0)};
  const Segment s = integrate_symmetric(kernel, 0.0, x0);
  if (!(s.probability > 0.0)) throw NumericError("window has zero probability");
  return {x0, s.probability, s.numerator / s.probability};
}

WindowStats avg_fidelity_window(const AmpConfig& cfg, double x0) {
  return avg_fidelity_window(ConditionalKernel(cfg), x0);
}

double scan_limit(double alpha) { return 2.0 * kSqrt2 * alpha + 4.0; }

WindowStats max_prob_at_target(const ConditionalKernel& kernel, double f_target) {
  require_target(f_target);
  const double f0 = kernel.fidelity(0.0);
  if (f0 < f_target) return {0.0, 0.0, f0};

  const double limit = scan_limit(kernel.config().alpha);
  const auto steps = static_cast<std::size_t>(std::ceil(limit / kScanStep - 1e-9));
  double prob = 0.0;
  double num = 0.0;
  double lo = 0.0;
  for (std::size_t i = 1; i <= steps; ++i) {
    const double hi = static_cast<double>(i) * kScanStep;
    const Segment s = integrate_symmetric(kernel, lo, hi);
    if ((num + s.numerator) / (prob + s.probability) < f_target) {
      // Refine inside (lo, hi): predicate holds at lo, fails at hi.
      double good = lo;
      double bad = hi;
      WindowStats best = lo == 0.0 ? WindowStats{0.0, 0.0, f0} : WindowStats{lo, prob, num / prob};
      while (bad - good >= kSearchTol) {
        const double mid = 0.5 * (good + bad);
        const Segment m = integrate_symmetric(kernel, lo, mid);
        const double p = prob + m.probability;
        const double avg = (num + m.numerator) / p;
        if (avg >= f_target) {
          good = mid;
          best = {mid, p, avg};
        } else {
          bad = mid;
        }
      }
      return best;
    }
    prob += s.probability;
    num += s.numerator;
    lo = hi;
  }
  return {lo, prob, num / prob};
}

WindowStats max_prob_at_target(const AmpConfig& cfg, double f_target) {
  return max_prob_at_target(ConditionalKernel(cfg), f_target);
}

// --- closed forms ---------------------------------------------------------------

namespace closed_form {
namespace {

double psi(double a, double x) {
  const double d = x - kSqrt2 * a;
  return std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * d * d);
}

double n_plus(double a) { return 1.0 / std::sqrt(2.0 + 2.0 * std::exp(-2.0 * a * a)); }
double n_minus(double a) { return 1.0 / std::sqrt(2.0 - 2.0 * std::exp(-2.0 * a * a)); }

}  // namespace

double density(Pairing pairing, double alpha, double x0) {
  const double b = kSqrt2 * alpha;
  const double v = psi(0.0, x0);
  const double s = psi(b, x0) + psi(-b, x0);
  const double d = psi(b, x0) - psi(-b, x0);
  const double ov = std::exp(-alpha * alpha);
  switch (pairing) {
    case Pairing::odd_odd:
      return std::pow(n_minus(alpha), 4) * (s * s + v * v / std::pow(n_plus(b), 2) - 4.0 * v * s * ov);
    case Pairing::even_even:
      return std::pow(n_plus(alpha), 4) * (s * s + v * v / std::pow(n_plus(b), 2) + 4.0 * v * s * ov);
    case Pairing::even_odd:
      return std::pow(n_plus(alpha) * n_minus(alpha), 2) * (v * v / std::pow(n_minus(b), 2) + d * d);
  }
  return 0.0;
}

double fidelity(Pairing pairing, double alpha, double x0) {
  const double b = kSqrt2 * alpha;
  const double v = psi(0.0, x0);
  const double s = psi(b, x0) + psi(-b, x0);
  const double ov = std::exp(-alpha * alpha);
  const double p = density(pairing, alpha, x0);
  switch (pairing) {
    case Pairing::odd_odd: {
      const double amp = v / n_plus(b) - 2.0 * ov * n_plus(b) * s;
      return std::pow(n_minus(alpha), 4) / p * amp * amp;
    }
    case Pairing::even_even: {
      const double amp = v / n_plus(b) + 2.0 * ov * n_plus(b) * s;
      return std::pow(n_plus(alpha), 4) / p * amp * amp;
    }
    case Pairing::even_odd:
      return std::pow(n_plus(alpha) * n_minus(alpha), 2) / std::pow(n_minus(b), 2) * v * v / p;
  }
  return 0.0;
}

}  // namespace closed_form
}  // namespace scsamp
