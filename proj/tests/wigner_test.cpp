#include "scsamp/wigner.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "scsamp/cascade.hpp"
#include "scsamp/errors.hpp"
#include "scsamp/fock_oracle.hpp"
#include "test_util.hpp"

namespace scsamp {
namespace {

using scsamp::testing::random_label;
using scsamp::testing::random_mixture;

constexpr double kPi = std::numbers::pi;

TEST(WignerDyad, DiagonalIsGaussian) {
  const CoherentLabel a(cplx{0.7, -0.3});
  for (cplx beta : {cplx{0.0, 0.0}, cplx{0.7, -0.3}, cplx{-1.0, 0.4}}) {
    const cplx w = wigner_dyad(a, a, beta);
    EXPECT_NEAR(w.imag(), 0.0, 1e-15);
    EXPECT_NEAR(w.real(), 2.0 / kPi * std::exp(-2.0 * std::norm(beta - a.amp())), 1e-15);
  }
}

TEST(WignerDyad, IntegratesToOverlap) {
  std::mt19937_64 rng(61);
  for (int i = 0; i < 3; ++i) {
    const CoherentLabel a = random_label(rng, 1.0);
    const CoherentLabel b = random_label(rng, 1.0);
    const double h = 0.02;
    cplx sum{0.0, 0.0};
    for (double re = -6.0; re <= 6.0; re += h)
      for (double im = -6.0; im <= 6.0; im += h) sum += wigner_dyad(a, b, {re, im});
    EXPECT_NEAR(std::abs(sum * h * h - coherent_overlap(b, a)), 0.0, 1e-8);
  }
}

TEST(WignerDyad, MatchesFockParityOracle) {
  std::mt19937_64 rng(67);
  const int n = fock::kDefaultCutoff;
  for (int i = 0; i < 5; ++i) {
    const CoherentLabel a = random_label(rng, 1.0);
    const CoherentLabel b = random_label(rng, 1.0);
    const fock::FockMat dyad = fock::coherent_fock(a.amp(), n) * fock::coherent_fock(b.amp(), n).adjoint();
    for (cplx beta : {cplx{0.0, 0.0}, cplx{0.5, -0.8}, cplx{-1.2, 0.3}}) {
      EXPECT_NEAR(std::abs(wigner_dyad(a, b, beta) - fock::wigner_parity_complex(dyad, beta)), 0.0, 1e-10);
    }
  }
}

TEST(WignerPoint, ScsParityAtOrigin) {
  for (double a : {0.3, 1.0, 2.5}) {
    EXPECT_NEAR(wigner_point(scs_state(a, Parity::odd), 0.0) * kPi / 2.0, -1.0, 1e-10);
    EXPECT_NEAR(wigner_point(scs_state(a, Parity::even), 0.0) * kPi / 2.0, 1.0, 1e-10);
  }
  EXPECT_NEAR(wigner_point(PureCSS::coherent(0.0), 0.0), 2.0 / kPi, 1e-15);
}

TEST(WignerPoint, MixtureMatchesFockOracle) {
  std::mt19937_64 rng(71);
  const DyadMix m = random_mixture(rng, 1);
  const int n = fock::kDefaultCutoff;
  fock::FockMat rho = fock::FockMat::Zero(n, n);
  for (const auto& t : m.terms()) {
    rho += t.coeff * fock::coherent_fock(t.ket[0].amp(), n) * fock::coherent_fock(t.bra[0].amp(), n).adjoint();
  }
  for (cplx beta : {cplx{0.0, 0.0}, cplx{0.4, 0.9}, cplx{-0.6, -0.2}}) {
    EXPECT_NEAR(wigner_point(m, beta), fock::wigner_parity(rho, beta), 1e-10);
  }
}

TEST(WignerState, GridNormalizationAndMarginal) {
  const GridSpec spec{{-6.0, 6.0, 0.05}, {-6.0, 6.0, 0.05}};
  for (Parity parity : {Parity::odd, Parity::even}) {
    const PureCSS s = scs_state(1.2, parity);
    const PhaseGrid g = wigner_state(s, spec);
    EXPECT_NEAR(g.integral(), 1.0, 1e-3);
    const std::vector<double> marginal = g.x_marginal();
    for (std::size_t ix = 0; ix < g.x_axis.size(); ix += 7) {
      cplx psi{0.0, 0.0};
      for (const auto& t : s.terms()) psi += t.coeff * quadrature_wavefunction(t.labels[0], g.x_axis[ix]);
      EXPECT_NEAR(marginal[ix], std::norm(psi), 1e-4) << "x = " << g.x_axis[ix];
    }
  }
}

TEST(WignerState, QuadratureUnitsHalvePointValues) {
  const PureCSS s = scs_state(0.9, Parity::odd);
  const PhaseGrid g = wigner_state(s, {{-1.0, 1.0, 0.5}, {-1.0, 1.0, 0.5}});
  for (std::size_t ix = 0; ix < g.x_axis.size(); ++ix) {
    for (std::size_t ip = 0; ip < g.p_axis.size(); ++ip) {
      const cplx beta = cplx{g.x_axis[ix], g.p_axis[ip]} / std::numbers::sqrt2;
      EXPECT_NEAR(g.at(ix, ip), wigner_point(s, beta) / 2.0, 1e-15);
    }
  }
}

TEST(WignerState, AmplifiedStateHasMoreFringes) {
  const double a = 1.2;
  const GridSpec spec{{0.0, 0.0, 1.0}, {-4.0, 4.0, 0.01}};
  const DyadMix out = window_discretize({a, Pairing::even_odd}, 1.0, 21);
  const std::size_t in_count = zero_crossings(wigner_state(scs_state(a, Parity::odd), spec).p_slice(0));
  const std::size_t out_count = zero_crossings(wigner_state(out, spec).p_slice(0));
  EXPECT_GT(out_count, in_count);
  // The output is odd-type: negative at the origin.
  EXPECT_LT(wigner_point(out, 0.0), 0.0);
}

TEST(WignerState, RejectsMultiMode) {
  EXPECT_THROW(wigner_state(tensor(PureCSS::coherent(0.0), PureCSS::coherent(1.0))), std::invalid_argument);
}

TEST(ZeroCrossings, CountsSignChanges) {
  EXPECT_EQ(zero_crossings({1.0, -1.0, 1.0}), 2u);
  EXPECT_EQ(zero_crossings({1.0, 0.0, 1.0}), 0u);
  EXPECT_EQ(zero_crossings({1.0, 1e-13, -1.0}), 1u);
  EXPECT_EQ(zero_crossings({}), 0u);
}

TEST(WignerOutput, CsvAndJson) {
  const PhaseGrid g = wigner_state(scs_state(1.0, Parity::even), {{-1.0, 1.0, 1.0}, {0.0, 0.5, 0.5}});
  std::ostringstream os;
  write_csv(os, g);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  EXPECT_EQ(line, "x,p,W");
  int rows = 0;
  while (std::getline(is, line)) ++rows;
  EXPECT_EQ(rows, 6);
  const nlohmann::json j = to_json(g);
  EXPECT_EQ(j.at("x_axis").size(), 3u);
  EXPECT_EQ(j.at("p_axis").size(), 2u);
  EXPECT_EQ(j.at("values").size(), 6u);
}

}  // namespace
}  // namespace scsamp
