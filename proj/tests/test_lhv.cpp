#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "ghzlab/angle.hpp"
#include "ghzlab/lhv.hpp"

using namespace ghzlab;
using lhv::RegionTag;

TEST_CASE("omega sampler inverts the marginal CDF") {
  CHECK(lhv::omega_from_unit(0.0) == -kPi);
  CHECK(lhv::omega_from_unit(0.25) == doctest::Approx(-kPi / 2).epsilon(1e-15));
  CHECK(lhv::omega_from_unit(0.5) == 0.0);
  CHECK(lhv::omega_from_unit(0.75) == doctest::Approx(kPi / 2).epsilon(1e-15));
  CHECK(lhv::omega_cdf(-kPi) == 0.0);
  CHECK(lhv::omega_cdf(0.0) == 0.5);
  CHECK(lhv::omega_cdf(kPi) == 1.0);
  for (int k = 0; k < 2000; ++k) {
    const double u = (k + 0.5) / 2000.0;
    const double w = lhv::omega_from_unit(u);
    CHECK(w >= -kPi);
    CHECK(w < kPi);
    CHECK(lhv::omega_cdf(w) == doctest::Approx(u).epsilon(1e-13));
  }
  const lhv::HiddenConfig h = lhv::sample_hidden(0.25, 0.75);
  CHECK(h.omega == doctest::Approx(-kPi / 2).epsilon(1e-15));
  CHECK(h.eta == doctest::Approx(kPi / 2).epsilon(1e-15));
}

TEST_CASE("sign conventions at the boundaries") {
  CHECK(lhv::sign_S(-kPi) == +1);  // -pi is the point +pi
  CHECK(lhv::sign_S(0.0) == -1);
  CHECK(lhv::sign_S(1.0) == +1);
  CHECK(lhv::sign_S(-1.0) == -1);

  CHECK(lhv::response(1.0, 0.5) == +1);
  CHECK(lhv::response(1.0, -0.5) == -1);
  CHECK(lhv::response(1.0, 0.0) == -1);  // eta = 0 joins the flipped half
  CHECK(lhv::response(-1.0, 0.5) == -1);

  CHECK(lhv::outcome_C(0.5) == +1);
  CHECK(lhv::outcome_C(0.0) == -1);
  CHECK(lhv::outcome_C(-0.5) == -1);

  CHECK(lhv::q_factor(0.5, 0.2) == +1);
  CHECK(lhv::q_factor(0.1, 0.2) == -1);
  CHECK(lhv::q_factor(0.2, 0.2) == +1);                      // sign(0) := +1
  CHECK(lhv::q_factor(-kPi / 2, kPi / 2) == -1);             // difference -pi
  CHECK(lhv::weak_y(+1) == std::complex<double>(0.0, 1.0));
}

TEST_CASE("chart transform: frozen values at delta = pi/2") {
  const double d = kPi / 2;
  const double c = 1.0 - std::sqrt(2.0) / 2.0;  // cos outputs of the branches
  CHECK(lhv::transform_L(3 * kPi / 4, d) ==
        doctest::Approx(std::acos(c)).epsilon(1e-15));
  CHECK(lhv::transform_L(kPi / 4, d) ==
        doctest::Approx(-std::acos(c)).epsilon(1e-15));
  CHECK(lhv::transform_L(-3 * kPi / 4, d) ==
        doctest::Approx(std::acos(-c)).epsilon(1e-15));
  CHECK(lhv::transform_L(-kPi / 4, d) ==
        doctest::Approx(-std::acos(-c)).epsilon(1e-15));
}

TEST_CASE("chart transform: identity at delta = 0, antipode at delta = -pi") {
  for (int k = 0; k < 1000; ++k) {
    const double w = canonical_angle(-kPi + (k + 0.5) * kTwoPi / 1000.0);
    CHECK(circular_distance(lhv::transform_L(w, 0.0), w) <= 1e-9);
    CHECK(lhv::sign_S(lhv::transform_L(w, 0.0)) == lhv::sign_S(w));
    CHECK(circular_distance(lhv::transform_L(w, -kPi), antipode(w)) <= 1e-9);
  }
  CHECK(lhv::transform_L(-kPi, 0.0) == -kPi);
  CHECK(lhv::transform_L(0.0, 0.0) == 0.0);
}

TEST_CASE("chart transform stays canonical and preserves the eta split") {
  for (const double d : {0.0, -kPi, kPi / 3, -kPi / 3, 2.9, -2.9, 0.01, -0.01}) {
    for (int k = 0; k < 500; ++k) {
      const double w = canonical_angle(-kPi + k * kTwoPi / 500.0);
      const double out = lhv::transform_L(w, d);
      CHECK(out >= -kPi);
      CHECK(out < kPi);
      CHECK_FALSE((std::signbit(out) && out == 0.0));  // never -0.0
    }
  }
}

TEST_CASE("omega_B_of splits on the sign of eta") {
  for (const double d : {0.7, -1.9, kPi / 2}) {
    for (const double w : {-2.5, -0.4, 0.0, 0.9, 2.8, -kPi}) {
      const double mapped = lhv::transform_L(w, d);
      CHECK(lhv::omega_B_of(w, 0.5, d) == mapped);
      CHECK(lhv::omega_B_of(w, -0.5, d) == antipode(mapped));
      CHECK(lhv::omega_B_of(w, 0.0, d) == antipode(mapped));
    }
  }
}

TEST_CASE("region classification in the strict convention") {
  const double d = kPi / 2;
  CHECK(lhv::classify_region(-kPi, d) == RegionTag::PP);
  CHECK(lhv::classify_region(3 * kPi / 4, d) == RegionTag::PP);
  CHECK(lhv::classify_region(kPi / 2, d) == RegionTag::PM);  // boundary joins PM
  CHECK(lhv::classify_region(0.1, d) == RegionTag::PM);
  CHECK(lhv::classify_region(0.0, d) == RegionTag::MM);
  CHECK(lhv::classify_region(-kPi / 4, d) == RegionTag::MM);
  CHECK(lhv::classify_region(-kPi / 2, d) == RegionTag::MP);  // boundary joins MP
  CHECK(lhv::classify_region(-3 * kPi / 4, d) == RegionTag::MP);

  CHECK(lhv::classify_region(-kPi, kPi) == RegionTag::PM);
  CHECK(lhv::classify_region(1.0, kPi) == RegionTag::PM);
  CHECK(lhv::classify_region(0.0, kPi) == RegionTag::MP);
  CHECK(lhv::classify_region(-1.0, kPi) == RegionTag::MP);

  CHECK(lhv::classify_region(-kPi, 0.0) == RegionTag::PP);
  CHECK(lhv::classify_region(1.0, 0.0) == RegionTag::PP);
  CHECK(lhv::classify_region(0.0, 0.0) == RegionTag::MM);
  CHECK(lhv::classify_region(-1.0, 0.0) == RegionTag::MM);

  CHECK_THROWS_AS((void)lhv::classify_region(0.1, -0.1), std::invalid_argument);
  CHECK_THROWS_AS((void)lhv::classify_region(0.1, kPi + 0.1),
                  std::invalid_argument);
}

TEST_CASE("region classification in the signed convention") {
  const double d = -kPi / 2;
  CHECK(lhv::classify_region_signed(-3 * kPi / 4, d) == RegionTag::PP);
  CHECK(lhv::classify_region_signed(-kPi / 2, d) == RegionTag::PP);
  CHECK(lhv::classify_region_signed(-0.1, d) == RegionTag::PM);
  CHECK(lhv::classify_region_signed(0.0, d) == RegionTag::PM);
  CHECK(lhv::classify_region_signed(0.3, d) == RegionTag::MM);
  CHECK(lhv::classify_region_signed(kPi / 2, d) == RegionTag::MM);
  CHECK(lhv::classify_region_signed(3 * kPi / 4, d) == RegionTag::MP);
  CHECK(lhv::classify_region_signed(-kPi, d) == RegionTag::MP);
  // non-negative deltas delegate to the strict convention
  CHECK(lhv::classify_region_signed(0.4, 0.8) == lhv::classify_region(0.4, 0.8));
  CHECK(lhv::classify_region_signed(-kPi, 0.8) ==
        lhv::classify_region(-kPi, 0.8));
}

TEST_CASE("triple product equals region parity off the fold edge") {
  // The identity holds on region interiors. At the exact fold edge
  // omega == antipode(delta) the transform argument is -1 up to rounding
  // residue, so acos conditioning puts the image ~1e-8 to either side of the
  // seam depending on which way the residue rounds; the seam side (and with
  // it the sign) is not resolvable there, so the probe skips that one
  // measure-zero point per delta.
  std::vector<double> etas = {0.7, -0.7, 1e-12, -1e-12, 0.0,
                              kPi / 2, -kPi / 2, -kPi};
  for (const double d : {0.0, -kPi, kPi / 3, -kPi / 3, 2.5, -2.5, 0.02, -3.1}) {
    std::vector<double> omegas = {-kPi, 0.0, d, negate_angle(d)};
    for (int k = 0; k < 200; ++k)
      omegas.push_back(canonical_angle(-kPi + (k + 0.13) * kTwoPi / 200.0));
    for (const double w : omegas) {
      if (circular_distance(w, antipode(d)) < 1e-9) continue;
      const int parity = lhv::region_parity(lhv::classify_region_signed(w, d));
      for (const double e : etas) {
        const int sa = lhv::response(w, e);
        const int sb = lhv::response(lhv::omega_B_of(w, e, d), e);
        const int sc = lhv::outcome_C(e);
        CHECK(sa * sb * sc == parity);
      }
    }
  }
}

TEST_CASE("star remap: frozen coordinates and involution domain") {
  const lhv::StarConfig s1 = lhv::star_remap(0.3, 1.0, 0.5, RegionTag::PP);
  CHECK(s1.omega_a == antipode(negate_angle(0.3)));
  CHECK(s1.omega_b == 1.0);
  CHECK(s1.eta == 0.5);

  const lhv::StarConfig s2 = lhv::star_remap(0.3, 1.0, 0.5, RegionTag::PM);
  CHECK(s2.omega_a == negate_angle(0.3));
  CHECK(s2.omega_b == antipode(1.0));
  CHECK(s2.eta == -0.5);

  const lhv::StarConfig s3 = lhv::star_remap(-2.0, 0.4, -1.1, RegionTag::MM);
  CHECK(s3.omega_a == antipode(2.0));
  CHECK(s3.eta == -1.1);

  CHECK_THROWS_AS((void)lhv::star_remap(0.1, 0.2, 0.3, static_cast<RegionTag>(7)),
                  std::invalid_argument);
}

TEST_CASE("star remap preserves the omega density") {
  for (int k = 0; k < 500; ++k) {
    const double w = canonical_angle(-kPi + (k + 0.5) * kTwoPi / 500.0);
    for (const RegionTag r :
         {RegionTag::PP, RegionTag::PM, RegionTag::MP, RegionTag::MM}) {
      const lhv::StarConfig s = lhv::star_remap(w, 0.8, 0.4, r);
      CHECK(lhv::omega_density(s.omega_a) ==
            doctest::Approx(lhv::omega_density(w)).epsilon(1e-12));
    }
  }
}
