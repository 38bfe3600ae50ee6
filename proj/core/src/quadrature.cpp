#include "scsamp/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/legendre.hpp>
#include <cmath>
#include <stdexcept>

namespace scsamp::quad {

Estimate integrate(const std::function<double(double)>& f, double a, double b, double tol, unsigned max_depth) {
  if (a == b) return {0.0, 0.0};
  double error = 0.0;
  const double value =
      boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, max_depth, tol, &error);
  return {value, error};
}

Rule gauss_legendre(std::size_t k, double a, double b) {
  if (k == 0) throw std::invalid_argument("gauss_legendre: need at least one node");
  const int n = static_cast<int>(k);
  // Boost returns the nonnegative zeros in ascending order (0 first when n is odd).
  const std::vector<double> zeros = boost::math::legendre_p_zeros<double>(n);
  Rule unit;
  for (auto it = zeros.rbegin(); it != zeros.rend(); ++it) {
    if (*it == 0.0) continue;
    unit.nodes.push_back(-*it);
  }
  if (n % 2 == 1) unit.nodes.push_back(0.0);
  for (double z : zeros) {
    if (z == 0.0) continue;
    unit.nodes.push_back(z);
  }
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  Rule out;
  for (double z : unit.nodes) {
    const double dp = boost::math::legendre_p_prime(n, z);
    out.nodes.push_back(mid + half * z);
    out.weights.push_back(half * 2.0 / ((1.0 - z * z) * dp * dp));
  }
  return out;
}

}  // namespace scsamp::quad
