#pragma once

// Wigner functions of coherent-state superpositions.
//
// Two normalizations appear:
//   - point values W(beta) over the complex amplitude plane, integrating to
//     tr(rho) against d^2 beta; W(0) = (2/pi) <parity>;
//   - PhaseGrid values W(x, p) in quadrature units (beta = (x + i p)/sqrt2),
//     integrating to tr(rho) against dx dp, with x-marginal |<x|psi>|^2.
// They differ by the Jacobian: W(x, p) = W(beta) / 2.

#include <cstddef>
#include <iosfwd>
#include <vector>

#include <nlohmann/json.hpp>

#include "scsamp/cstate.hpp"

namespace scsamp {

// Wigner function of the dyad |a><b| at beta:
//   (2/pi) <b|a> exp(-2 (beta - a)(conj(beta) - conj(b))).
cplx wigner_dyad(CoherentLabel a, CoherentLabel b, cplx beta);

// Single-mode states only.
double wigner_point(const DyadMix& state, cplx beta);
double wigner_point(const PureCSS& state, cplx beta);

struct AxisSpec {
  double min = -4.0;
  double max = 4.0;
  double step = 0.05;

  std::vector<double> points() const;
};

struct GridSpec {
  AxisSpec x;
  AxisSpec p;
};

struct PhaseGrid {
  std::vector<double> x_axis;
  std::vector<double> p_axis;
  std::vector<double> values;  // row-major in p: values[ip * x_axis.size() + ix]

  double at(std::size_t ix, std::size_t ip) const { return values[ip * x_axis.size() + ix]; }
  // Trapezoid rule over the whole grid.
  double integral() const;
  // Trapezoid integral over p at each x.
  std::vector<double> x_marginal() const;
  // W(x_axis[ix], p) for all p.
  std::vector<double> p_slice(std::size_t ix) const;
};

// Quadrature-unit grid. Throws std::invalid_argument for multi-mode states
// and NumericError when the Hermitized result keeps an imaginary part > 1e-10.
PhaseGrid wigner_state(const DyadMix& state, const GridSpec& spec = {});
PhaseGrid wigner_state(const PureCSS& state, const GridSpec& spec = {});

// Sign changes along a sampled curve, ignoring samples with |v| <= floor.
std::size_t zero_crossings(const std::vector<double>& values, double floor = 1e-12);

// Long format: header "x,p,W" then one row per grid point.
void write_csv(std::ostream& out, const PhaseGrid& grid);
nlohmann::json to_json(const PhaseGrid& grid);

}  // namespace scsamp
