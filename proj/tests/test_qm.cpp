#include <cmath>
#include <complex>
#include <stdexcept>

#include "doctest.h"
#include "ghzlab/angle.hpp"
#include "ghzlab/qm.hpp"

using namespace ghzlab;
using qm::SiteObservable;

namespace {
const auto I = SiteObservable::identity;
const auto XY = SiteObservable::xy;
const auto Z = SiteObservable::z;
}  // namespace

TEST_CASE("ghz_state amplitudes") {
  const qm::State s = qm::ghz_state(3, 0.7);
  REQUIRE(s.amp.size() == 8);
  CHECK(s.n_sites == 3);
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(s.amp[7] - qm::Complex(r, 0.0)) <= 1e-15);
  CHECK(std::abs(s.amp[0] - std::polar(r, 0.7)) <= 1e-15);
  for (int k = 1; k < 7; ++k) CHECK(std::abs(s.amp[k]) == 0.0);
  CHECK_THROWS_AS((void)qm::ghz_state(1, 0.0), std::invalid_argument);
  CHECK_THROWS_AS((void)qm::ghz_state(13, 0.0), std::invalid_argument);
}

TEST_CASE("planar triple correlator is cos(alpha + beta + gamma + phi)") {
  for (const double phi : {0.0, -1.2}) {
    const qm::State s = qm::ghz_state(3, phi);
    for (const double a : {0.0, 1.1, -2.0})
      for (const double b : {0.0, 0.4, 2.8})
        for (const double g : {-0.9, 0.0, 1.7}) {
          const double e = qm::expectation(s, {XY(a), XY(b), XY(g)});
          CHECK(e == doctest::Approx(std::cos(a + b + g + phi)).epsilon(1e-12));
        }
  }
  const qm::State s0 = qm::ghz_state(3, 0.0);
  CHECK(qm::expectation(s0, {XY(0), XY(0), XY(0)}) ==
        doctest::Approx(1.0).epsilon(1e-13));
  const qm::State spi = qm::ghz_state(3, kPi);
  CHECK(qm::expectation(spi, {XY(0), XY(0), XY(0)}) ==
        doctest::Approx(-1.0).epsilon(1e-13));
}

TEST_CASE("two-particle state follows the same closed form") {
  const qm::State s = qm::ghz_state(2, 0.5);
  for (const double a : {0.0, 0.9})
    for (const double b : {-1.3, 0.2})
      CHECK(qm::expectation(s, {XY(a), XY(b)}) ==
            doctest::Approx(std::cos(a + b + 0.5)).epsilon(1e-12));
}

TEST_CASE("planar singles and pairs vanish; z parity structure") {
  const qm::State s = qm::ghz_state(3, 0.9);
  CHECK(std::fabs(qm::expectation(s, {XY(0.7), I(), I()})) <= 1e-13);
  CHECK(std::fabs(qm::expectation(s, {I(), I(), XY(-0.4)})) <= 1e-13);
  CHECK(std::fabs(qm::expectation(s, {XY(0.7), XY(0.1), I()})) <= 1e-13);
  CHECK(std::fabs(qm::expectation(s, {I(), XY(0.7), XY(0.1)})) <= 1e-13);
  CHECK(qm::expectation(s, {Z(), Z(), I()}) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(qm::expectation(s, {I(), Z(), Z()}) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(std::fabs(qm::expectation(s, {Z(), I(), I()})) <= 1e-13);
  CHECK(std::fabs(qm::expectation(s, {Z(), Z(), Z()})) <= 1e-13);
  CHECK(std::fabs(qm::expectation(s, {XY(0.3), Z(), Z()})) <= 1e-13);
}

TEST_CASE("joint distribution agrees with expectations") {
  const qm::State s = qm::ghz_state(3, 0.0);
  const std::vector<SiteObservable> obs{XY(0.0), XY(kPi / 2), XY(kPi / 2)};
  const qm::OutcomeDistribution d = qm::joint_distribution(s, obs);
  REQUIRE(d.prob.size() == 8);
  CHECK(d.sites == std::vector<int>{0, 1, 2});
  CHECK(d.total() == doctest::Approx(1.0).epsilon(1e-13));
  for (const double p : d.prob) CHECK(p >= 0.0);
  // effective delta is pi here, so the product is -1 with certainty
  CHECK(d.moment({0, 1, 2}) == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(d.moment({0, 1, 2}) ==
        doctest::Approx(qm::expectation(s, obs)).epsilon(1e-12));
  CHECK(std::fabs(d.moment({0})) <= 1e-13);
  CHECK(std::fabs(d.moment({1, 2})) <= 1e-13);
  CHECK_THROWS_AS((void)qm::joint_distribution(s, {XY(0.0), I(), XY(0.0)}),
                  std::invalid_argument);
}
