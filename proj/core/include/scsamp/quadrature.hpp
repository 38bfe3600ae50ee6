#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace scsamp::quad {

// Integrands here are smooth Gaussian mixtures of O(1) mass.
inline constexpr double kAbsTol = 1e-10;
inline constexpr unsigned kMaxDepth = 14;  // at most 2^14 subintervals

struct Estimate {
  double value;
  double error;
};

// Adaptive Gauss-Kronrod (31-point) on [a, b]. The error target is tol
// relative to the integral of |f|, which for probability-like integrands of
// mass <= 1 bounds the absolute error by tol.
Estimate integrate(const std::function<double(double)>& f, double a, double b, double tol = kAbsTol,
                   unsigned max_depth = kMaxDepth);

struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// K-point Gauss-Legendre rule mapped to [a, b], nodes ascending.
Rule gauss_legendre(std::size_t k, double a, double b);

}  // namespace scsamp::quad
