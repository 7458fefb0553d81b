#include "ghzlab/lhv.hpp"

#include <cmath>
#include <stdexcept>

namespace ghzlab::lhv {

namespace {

// Arguments of the acos below are analytically inside [-1, 1]; anything
// further out than the slack is a branch-selection bug, not roundoff.
double clamp_unit(double x) {
  constexpr double kSlack = 1e-12;
  if (x > 1.0) {
    if (x > 1.0 + kSlack)
      throw std::logic_error("transform_L: acos argument above 1");
    return 1.0;
  }
  if (x < -1.0) {
    if (x < -1.0 - kSlack)
      throw std::logic_error("transform_L: acos argument below -1");
    return -1.0;
  }
  return x;
}

}  // namespace

double transform_L(double omega, double delta) {
  const double cd = std::cos(delta);
  const double cw = std::cos(omega);
  double arg;
  if (delta >= 0.0) {
    if (omega < delta - kPi)
      arg = -cd - cw - 1.0;
    else if (omega < 0.0)
      arg = cd + cw - 1.0;
    else if (omega < delta)
      arg = cd - cw + 1.0;
    else
      arg = -cd + cw + 1.0;
  } else {
    if (omega < delta)
      arg = -cd + cw + 1.0;
    else if (omega < 0.0)
      arg = cd - cw + 1.0;
    else if (omega < delta + kPi)
      arg = cd + cw - 1.0;
    else
      arg = -cd - cw - 1.0;
  }
  double out = q_factor(omega, delta) * std::acos(clamp_unit(arg));
  if (out >= kPi) out = -kPi;  // q=+1 with acos rounding to pi
  return out + 0.0;
}

double omega_B_of(double omega, double eta, double delta) {
  const double mapped = transform_L(omega, delta);
  return eta > 0.0 ? mapped : antipode(mapped);
}

RegionTag classify_region(double omega, double delta) {
  if (!(delta >= 0.0 && delta <= kPi))
    throw std::invalid_argument("classify_region: delta outside [0, pi]");
  if (omega == -kPi) return delta < kPi ? RegionTag::PP : RegionTag::PM;
  if (omega > delta) return RegionTag::PP;
  if (omega > 0.0) return RegionTag::PM;
  if (omega > delta - kPi) return RegionTag::MM;
  return RegionTag::MP;
}

RegionTag classify_region_signed(double omega, double delta) {
  if (!(delta >= -kPi && delta < kPi))
    throw std::invalid_argument(
        "classify_region_signed: delta not canonical");
  if (delta >= 0.0) return classify_region(omega, delta);
  // Reflected partition; interval ends close on the right so that region
  // parity stays exact at the boundary points.
  if (omega == -kPi) return RegionTag::MP;
  if (omega <= delta) return RegionTag::PP;
  if (omega <= 0.0) return RegionTag::PM;
  if (omega <= delta + kPi) return RegionTag::MM;
  return RegionTag::MP;
}

StarConfig star_remap(double omega_a, double omega_b, double eta,
                      RegionTag region) {
  switch (region) {
    case RegionTag::PP:
    case RegionTag::MM:
      return {antipode(negate_angle(omega_a)), omega_b, eta};
    case RegionTag::PM:
    case RegionTag::MP:
      return {negate_angle(omega_a), antipode(omega_b), negate_angle(eta)};
  }
  throw std::invalid_argument("star_remap: invalid region tag");
}

}  // namespace ghzlab::lhv
