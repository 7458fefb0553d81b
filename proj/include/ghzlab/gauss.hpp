#pragma once

#include <vector>

namespace ghzlab::num {

/// Gauss-Legendre rule on [-1, 1]. Nodes found by Newton iteration on the
/// Legendre recurrence; exact for polynomials of degree 2n-1, and on an
/// analytic integrand a 32-point rule is already at roundoff.
struct GaussLegendre {
  explicit GaussLegendre(int n);

  std::vector<double> node;    // ascending
  std::vector<double> weight;

  /// Integrate f over [a, b]; fixed evaluation order (deterministic bytes).
  template <class F>
  double integrate(F&& f, double a, double b) const {
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    double acc = 0.0;
    for (std::size_t i = 0; i < node.size(); ++i)
      acc += weight[i] * f(mid + half * node[i]);
    return acc * half;
  }

  /// Composite rule over consecutive segments given by breakpoints.
  template <class F>
  double integrate_segments(F&& f, const std::vector<double>& breaks) const {
    double acc = 0.0;
    for (std::size_t s = 0; s + 1 < breaks.size(); ++s)
      acc += integrate(f, breaks[s], breaks[s + 1]);
    return acc;
  }
};

}  // namespace ghzlab::num
