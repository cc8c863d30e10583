#pragma once

#include <vector>

namespace beambounds {

/// Gauss–Legendre rule on [-1, 1]; exact for polynomials of degree 2n-1.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Rules for 1 <= n <= 64 are computed once (Newton on P_n) and cached.
const GaussRule& gauss_legendre(int n);

/// ∫_a^b f(x) dx with n-point Gauss on each of `pieces` equal subintervals.
template <class F>
double integrate(F&& f, double a, double b, int n, int pieces = 1) {
  const GaussRule& rule = gauss_legendre(n);
  const double width = (b - a) / pieces;
  double sum = 0.0;
  for (int p = 0; p < pieces; ++p) {
    const double lo = a + p * width;
    const double mid = lo + 0.5 * width;
    for (std::size_t q = 0; q < rule.nodes.size(); ++q)
      sum += rule.weights[q] * f(mid + 0.5 * width * rule.nodes[q]);
  }
  return 0.5 * width * sum;
}

}  // namespace beambounds
