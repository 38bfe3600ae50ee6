#include "scsamp/wigner.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "scsamp/errors.hpp"
#include "scsamp/numfmt.hpp"

namespace scsamp {
namespace {

void require_single_mode(std::size_t modes) {
  if (modes != 1) throw std::invalid_argument("Wigner functions are defined here for single-mode states only");
}

// Adds the conjugate-transposed copy of every term with half weight.
DyadMix hermitize(const DyadMix& m) {
  DyadMix out(m.modes());
  for (const auto& t : m.terms()) {
    out.add_term(0.5 * t.coeff, t.ket, t.bra);
    out.add_term(0.5 * std::conj(t.coeff), t.bra, t.ket);
  }
  return canonicalize(out);
}

cplx wigner_sum(const DyadMix& m, cplx beta) {
  cplx sum{0.0, 0.0};
  for (const auto& t : m.terms()) sum += t.coeff * wigner_dyad(t.ket[0], t.bra[0], beta);
  return sum;
}

double trapezoid(const std::vector<double>& y, double h) {
  if (y.size() < 2) return 0.0;
  double s = 0.5 * (y.front() + y.back());
  for (std::size_t i = 1; i + 1 < y.size(); ++i) s += y[i];
  return s * h;
}

double axis_step(const std::vector<double>& axis) { return axis.size() > 1 ? axis[1] - axis[0] : 0.0; }

}  // namespace

cplx wigner_dyad(CoherentLabel a, CoherentLabel b, cplx beta) {
  const cplx e = -2.0 * (beta - a.amp()) * (std::conj(beta) - std::conj(b.amp())) +
                 coherent_overlap_exponent(b, a);
  return 2.0 / std::numbers::pi * std::exp(e);
}

double wigner_point(const DyadMix& state, cplx beta) {
  require_single_mode(state.modes());
  return wigner_sum(hermitize(state), beta).real();
}

double wigner_point(const PureCSS& state, cplx beta) { return wigner_point(DyadMix::from_pure(state), beta); }

std::vector<double> AxisSpec::points() const {
  if (!(step > 0.0) || !(max >= min)) throw std::invalid_argument("grid axis needs min <= max and step > 0");
  const auto n = static_cast<std::size_t>(std::floor((max - min) / step + 1e-9)) + 1;
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = min + static_cast<double>(i) * step;
  return out;
}

double PhaseGrid::integral() const {
  const std::vector<double> marginal = x_marginal();
  return trapezoid(marginal, axis_step(x_axis));
}

std::vector<double> PhaseGrid::x_marginal() const {
  std::vector<double> out(x_axis.size());
  const double hp = axis_step(p_axis);
  std::vector<double> column(p_axis.size());
  for (std::size_t ix = 0; ix < x_axis.size(); ++ix) {
    for (std::size_t ip = 0; ip < p_axis.size(); ++ip) column[ip] = at(ix, ip);
    out[ix] = trapezoid(column, hp);
  }
  return out;
}

std::vector<double> PhaseGrid::p_slice(std::size_t ix) const {
  std::vector<double> out(p_axis.size());
  for (std::size_t ip = 0; ip < p_axis.size(); ++ip) out[ip] = at(ix, ip);
  return out;
}

PhaseGrid wigner_state(const DyadMix& state, const GridSpec& spec) {
  require_single_mode(state.modes());
  const DyadMix h = hermitize(state);
  PhaseGrid grid{spec.x.points(), spec.p.points(), {}};
  grid.values.resize(grid.x_axis.size() * grid.p_axis.size());
  for (std::size_t ip = 0; ip < grid.p_axis.size(); ++ip) {
    for (std::size_t ix = 0; ix < grid.x_axis.size(); ++ix) {
      const cplx beta = cplx{grid.x_axis[ix], grid.p_axis[ip]} / std::numbers::sqrt2;
      const cplx w = 0.5 * wigner_sum(h, beta);
      if (std::abs(w.imag()) > 1e-10) throw NumericError("Wigner value keeps an imaginary part");
      grid.values[ip * grid.x_axis.size() + ix] = w.real();
    }
  }
  return grid;
}

PhaseGrid wigner_state(const PureCSS& state, const GridSpec& spec) {
  return wigner_state(DyadMix::from_pure(state), spec);
}

std::size_t zero_crossings(const std::vector<double>& values, double floor) {
  std::size_t count = 0;
  int last = 0;
  for (double v : values) {
    if (std::abs(v) <= floor) continue;
    const int s = v > 0.0 ? 1 : -1;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

void write_csv(std::ostream& out, const PhaseGrid& grid) {
  out << "x,p,W\n";
  for (std::size_t ip = 0; ip < grid.p_axis.size(); ++ip) {
    for (std::size_t ix = 0; ix < grid.x_axis.size(); ++ix) {
      out << format_number(grid.x_axis[ix]) << ',' << format_number(grid.p_axis[ip]) << ','
          << format_number(grid.at(ix, ip)) << '\n';
    }
  }
}

nlohmann::json to_json(const PhaseGrid& grid) {
  return {{"x_axis", grid.x_axis}, {"p_axis", grid.p_axis}, {"values", grid.values}, {"layout", "row-major in p"}};
}

}  // namespace scsamp
