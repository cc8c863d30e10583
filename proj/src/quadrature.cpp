#include "beambounds/quadrature.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "beambounds/errors.hpp"

namespace beambounds {
namespace {

constexpr int kMaxPoints = 64;

GaussRule compute_rule(int n) {
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute P_n' at the converged root for the weight.
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

}  // namespace

const GaussRule& gauss_legendre(int n) {
  if (n < 1 || n > kMaxPoints) throw InvalidArgument("gauss_legendre: need 1 <= n <= 64");
  static const std::array<GaussRule, kMaxPoints + 1> rules = [] {
    std::array<GaussRule, kMaxPoints + 1> r;
    for (int k = 1; k <= kMaxPoints; ++k) r[k] = compute_rule(k);
    return r;
  }();
  return rules[n];
}

}  // namespace beambounds
