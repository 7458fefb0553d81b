#include "ghzlab/gauss.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ghzlab::num {

GaussLegendre::GaussLegendre(int n) {
  if (n < 1) throw std::invalid_argument("GaussLegendre: n < 1");
  node.assign(n, 0.0);
  weight.assign(n, 0.0);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Chebyshev-based starting guess, then Newton on P_n.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / pp;
      x -= dx;
      if (std::fabs(dx) < 1e-15) break;
    }
    node[i] = -x;
    node[n - 1 - i] = x;
    weight[i] = 2.0 / ((1.0 - x * x) * pp * pp);
    weight[n - 1 - i] = weight[i];
  }
}

}  // namespace ghzlab::num
