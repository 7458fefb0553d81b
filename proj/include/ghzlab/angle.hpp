#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ghzlab {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Angles are doubles kept on the canonical circle [-pi, pi); +pi is the same
// point as -pi and is always stored as -pi. Helpers below return +0.0 (never
// -0.0) so equal angles have equal bytes.

/// Reduce an arbitrary finite angle to [-pi, pi).
inline double canonical_angle(double x) {
  if (!std::isfinite(x))
    throw std::invalid_argument("canonical_angle: non-finite input");
  double r = std::remainder(x, kTwoPi);  // in [-pi, pi]
  if (r >= kPi) r -= kTwoPi;
  return r + 0.0;
}

/// Antipodal point of a canonical angle, canonical.
inline double antipode(double w) {
  double t = (w >= 0.0) ? w - kPi : w + kPi;
  if (t >= kPi) t = -kPi;  // w just below 0 can round up to pi
  return t + 0.0;
}

/// Negation on the circle; fixes -pi (and 0), stays canonical.
inline double negate_angle(double w) {
  if (w == -kPi) return -kPi;
  return (0.0 - w) + 0.0;
}

/// Distance along the circle, in [0, pi].
inline double circular_distance(double a, double b) {
  return std::fabs(std::remainder(a - b, kTwoPi));
}

}  // namespace ghzlab
