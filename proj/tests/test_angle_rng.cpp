#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

#include "doctest.h"
#include "ghzlab/angle.hpp"
#include "ghzlab/rng.hpp"

using namespace ghzlab;

TEST_CASE("canonical_angle wraps to [-pi, pi) and pins the seam at -pi") {
  CHECK(canonical_angle(0.0) == 0.0);
  CHECK(canonical_angle(kPi) == -kPi);
  CHECK(canonical_angle(-kPi) == -kPi);
  CHECK(canonical_angle(3.0 * kPi) == -kPi);
  CHECK(canonical_angle(kTwoPi) == 0.0);
  CHECK(canonical_angle(kPi / 3 + kTwoPi) ==
        doctest::Approx(kPi / 3).epsilon(1e-14));
  CHECK_FALSE(std::signbit(canonical_angle(-0.0)));
  CHECK_THROWS_AS((void)canonical_angle(std::numeric_limits<double>::infinity()),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)canonical_angle(std::nan("")), std::invalid_argument);
  for (int k = -40; k <= 40; ++k) {
    const double w = canonical_angle(0.37 * k);
    CHECK(w >= -kPi);
    CHECK(w < kPi);
  }
}

TEST_CASE("antipode maps canonically and is an involution on the circle") {
  CHECK(antipode(0.0) == -kPi);
  CHECK(antipode(-kPi) == 0.0);
  CHECK(antipode(kPi / 2) == -kPi / 2);
  CHECK(antipode(-kPi / 2) == kPi / 2);
  // just below zero: w + pi rounds to pi, which must flush to -pi
  CHECK(antipode(-1e-300) == -kPi);
  for (int k = 0; k < 1000; ++k) {
    const double w = canonical_angle(-kPi + (k + 0.5) * kTwoPi / 1000.0);
    const double a = antipode(w);
    CHECK(a >= -kPi);
    CHECK(a < kPi);
    CHECK(circular_distance(antipode(a), w) <= 5e-16);
    CHECK(circular_distance(a, w) == doctest::Approx(kPi).epsilon(1e-15));
  }
}

TEST_CASE("negate_angle fixes the seam and kills -0.0") {
  CHECK(negate_angle(-kPi) == -kPi);
  CHECK(negate_angle(0.0) == 0.0);
  CHECK_FALSE(std::signbit(negate_angle(0.0)));
  CHECK(negate_angle(0.5) == -0.5);
  CHECK(negate_angle(-0.5) == 0.5);
}

TEST_CASE("circular_distance") {
  CHECK(circular_distance(kPi - 0.1, -kPi + 0.1) ==
        doctest::Approx(0.2).epsilon(1e-12));
  CHECK(circular_distance(0.3, 0.3) == 0.0);
  CHECK(circular_distance(-kPi, kPi) == 0.0);
  CHECK(circular_distance(1.0, -1.0) == doctest::Approx(2.0));
}

TEST_CASE("counter rng is a pure function of seed, stream, and index") {
  const std::uint64_t off = rng::stream_offset(7, rng::Stream::HiddenU);
  CHECK(rng::counter_word(off, 123) == rng::counter_word(off, 123));
  CHECK(rng::counter_word(off, 123) != rng::counter_word(off, 124));
  CHECK(rng::stream_offset(7, rng::Stream::HiddenU) !=
        rng::stream_offset(7, rng::Stream::HiddenV));
  CHECK(rng::stream_offset(7, rng::Stream::HiddenU) !=
        rng::stream_offset(8, rng::Stream::HiddenU));
  const rng::UnitPair p = rng::hidden_unit_pair(7, 123);
  CHECK(p.u == rng::to_unit(rng::counter_word(
                   rng::stream_offset(7, rng::Stream::HiddenU), 123)));
  CHECK(p.v == rng::to_unit(rng::counter_word(
                   rng::stream_offset(7, rng::Stream::HiddenV), 123)));
}

TEST_CASE("to_unit lands on the 2^-52 grid inside [0, 1)") {
  CHECK(rng::to_unit(0) == 0.0);
  CHECK(rng::to_unit(~0ull) < 1.0);
  const std::uint64_t off = rng::stream_offset(0, rng::Stream::HiddenU);
  for (std::uint64_t i = 0; i < 4096; ++i) {
    const double u = rng::to_unit(rng::counter_word(off, i));
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    const double scaled = u * 0x1.0p52;
    CHECK(scaled == std::floor(scaled));
  }
}

TEST_CASE("uniform stream has the right mean") {
  const std::uint64_t off = rng::stream_offset(3, rng::Stream::HiddenV);
  double acc = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i)
    acc += rng::to_unit(rng::counter_word(off, static_cast<std::uint64_t>(i)));
  CHECK(acc / n == doctest::Approx(0.5).epsilon(0.01));
}
