#pragma once

#include <complex>
#include <cstdint>

#include "ghzlab/angle.hpp"

// Local hidden-variable model for the three-particle GHZ state. A source
// event is a point (omega, eta) on the torus [-pi,pi)^2 distributed with
// density G(omega, eta) = |sin omega| / (8 pi); omega is expressed in the
// chart attached to one apparatus, eta is chart-independent. Every detector
// outcome below is a deterministic +-1 function of the local chart
// coordinates only.

namespace ghzlab::lhv {

/// Hidden configuration in some apparatus chart; both angles canonical.
struct HiddenConfig {
  double omega;
  double eta;
};

/// Four-region partition of the omega circle induced by a chart offset.
/// Parity of the tag (PP/MM vs PM/MP) equals the triple product s_a s_b s_c.
enum class RegionTag : std::uint8_t { PP = 0, PM = 1, MP = 2, MM = 3 };

inline const char* region_name(RegionTag r) {
  switch (r) {
    case RegionTag::PP: return "PP";
    case RegionTag::PM: return "PM";
    case RegionTag::MP: return "MP";
    case RegionTag::MM: return "MM";
  }
  return "??";
}

inline int region_parity(RegionTag r) {
  return (r == RegionTag::PP || r == RegionTag::MM) ? +1 : -1;
}

/// Joint density on the torus: (1/2pi) * |sin omega| / 4.
inline double density(const HiddenConfig& c) {
  return std::fabs(std::sin(c.omega)) / (4.0 * kTwoPi);
}

/// Marginal density of omega alone: |sin omega| / 4.
inline double omega_density(double omega) {
  return std::fabs(std::sin(omega)) / 4.0;
}

/// CDF of the omega marginal on [-pi, pi].
inline double omega_cdf(double omega) {
  return omega < 0.0 ? (std::cos(omega) + 1.0) / 4.0
                     : (3.0 - std::cos(omega)) / 4.0;
}

/// Inverse of the omega CDF: u = 0 -> -pi, u = 1/2 -> 0, u -> 1 -> pi.
inline double omega_from_unit(double u) {
  const double four_u = 4.0 * u;
  const double omega =
      u < 0.5 ? -std::acos(four_u - 1.0) : std::acos(3.0 - four_u);
  return omega + 0.0;
}

/// Inverse-CDF map from two uniforms in [0,1) to a hidden configuration;
/// eta is uniform on [-pi, pi).
inline HiddenConfig sample_hidden(double u, double v) {
  return {omega_from_unit(u), kTwoPi * v - kPi};
}

/// Base sign of the omega half-circle: +1 on (0, pi], -1 on (-pi, 0].
/// -pi is the same point as +pi and gets +1.
inline int sign_S(double omega) {
  return (omega > 0.0 || omega == -kPi) ? +1 : -1;
}

/// Detector outcome for a station reading chart coordinate omega_local:
/// the base sign, inverted on the eta <= 0 subpopulation.
inline int response(double omega_local, double eta) {
  return eta > 0.0 ? sign_S(omega_local) : -sign_S(omega_local);
}

/// Outcome of the chart-free station: the sign of eta (0 counts as -).
inline int outcome_C(double eta) { return eta > 0.0 ? +1 : -1; }

/// Orientation factor of the chart transform: the sign of omega - delta on
/// the circle, with sign(0) := +1 (and -pi -> -1).
inline int q_factor(double omega, double delta) {
  return canonical_angle(omega - delta) >= 0.0 ? +1 : -1;
}

/// Chart transform: the omega coordinate of the same hidden ray in a chart
/// rotated by delta. Piecewise q * acos(+-cos delta +- cos omega -+ 1);
/// measure-preserving (a rotation in the cumulative-measure coordinate).
/// Inputs canonical; throws std::logic_error if the acos argument leaves
/// [-1, 1] by more than 1e-12 (branch selection bug), clamps below that.
double transform_L(double omega, double delta);

/// omega in the chart of a station rotated by delta, for a hidden config
/// known in the fiducial chart: transform_L for eta > 0, its antipode for
/// eta <= 0 (anti-alignment of the rotated apparatus).
double omega_B_of(double omega, double eta, double delta);

/// Region tag for delta in [0, pi] (non-canonical pi accepted):
/// PP = (delta, pi], PM = (0, delta], MM = (delta-pi, 0], MP = (-pi, delta-pi]
/// where (delta, pi] means {-pi} joins PP. Throws outside [0, pi].
RegionTag classify_region(double omega, double delta);

/// Extension to canonical delta in [-pi, pi). For delta < 0:
/// PP = (-pi, delta], PM = (delta, 0], MM = (0, delta+pi],
/// MP = (delta+pi, pi) U {-pi}. Chosen so region parity equals the triple
/// product at every representable point.
RegionTag classify_region_signed(double omega, double delta);

/// Coordinates after the star (dual-population) remap.
struct StarConfig {
  double omega_a;
  double omega_b;
  double eta;
};

/// Reflection that swaps the correlated/anti-correlated sub-populations:
/// on PP u MM: omega_a* = -omega_a + pi, eta* = eta;
/// on PM u MP: omega_b* = omega_b + pi, omega_a* = -omega_a, eta* = -eta.
/// All outputs canonical. Throws on an out-of-range region value.
StarConfig star_remap(double omega_a, double omega_b, double eta,
                      RegionTag region);

/// Weak value attached to the orthogonal quadrature: i times the real
/// outcome. Products of these reproduce mixed-quadrature correlators.
inline std::complex<double> weak_y(int s) {
  return std::complex<double>(0.0, static_cast<double>(s));
}

}  // namespace ghzlab::lhv
