#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "ghzlab/angle.hpp"
#include "ghzlab/lhv.hpp"
#include "ghzlab/quadchecks.hpp"

using namespace ghzlab;
using namespace ghzlab::sim;

namespace {

// Same damage the verify fixture injects: shrink the transform on (0, delta).
TransformFn damaged_transform() {
  return [](double w, double d) {
    const double mapped = lhv::transform_L(w, d);
    if (d > 0.0 && w > 0.0 && w < d) return 0.9 * mapped;
    return mapped;
  };
}

}  // namespace

TEST_CASE("hidden density integrates to one") {
  CHECK(density_normalization() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("breakpoints bracket the circle and include the branch ends") {
  const std::vector<double> b = omega_breakpoints(1.0);
  REQUIRE(b.size() >= 2);
  CHECK(b.front() == -kPi);
  CHECK(b.back() == kPi);
  for (std::size_t i = 0; i + 1 < b.size(); ++i) CHECK(b[i] < b[i + 1]);
  bool has_zero = false, has_delta = false;
  for (const double x : b) {
    if (x == 0.0) has_zero = true;
    if (x == 1.0) has_delta = true;
  }
  CHECK(has_zero);
  CHECK(has_delta);
}

TEST_CASE("triple correlator law by quadrature") {
  CHECK(quadrature_triple_correlation(0.0) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(quadrature_triple_correlation(-kPi) ==
        doctest::Approx(-1.0).epsilon(1e-10));
  CHECK(std::fabs(quadrature_triple_correlation(kPi / 2)) <= 1e-10);
  CHECK(quadrature_triple_correlation(1.0) ==
        doctest::Approx(std::cos(1.0)).epsilon(1e-10));
  CHECK(quadrature_triple_correlation(-2.2) ==
        doctest::Approx(std::cos(2.2)).epsilon(1e-10));
}

TEST_CASE("conditional pair correlators split by the sign of eta") {
  const double d = 2.2;
  const QuadCorrelators q = quadrature_correlators(d);
  CHECK(q.ab_eta_pos == doctest::Approx(std::cos(d)).epsilon(1e-9));
  CHECK(q.ab_eta_nonpos == doctest::Approx(-std::cos(d)).epsilon(1e-9));
  CHECK(std::fabs(q.e_ab) <= 1e-9);
  CHECK(std::fabs(q.e_a) <= 1e-9);
  CHECK(std::fabs(q.e_b) <= 1e-9);
  CHECK(std::fabs(q.e_c) <= 1e-9);
  CHECK(std::fabs(q.e_bc) <= 1e-9);
  CHECK(std::fabs(q.e_ca) <= 1e-9);
  CHECK(q.e_abc == doctest::Approx(std::cos(d)).epsilon(1e-9));
}

TEST_CASE("quadrature report carries the measures, not sample noise") {
  const double d = -1.3;
  const CorrelatorReport r = quadrature_report(d);
  CHECK(r.method == Method::Quadrature);
  CHECK(r.n == 0);
  CHECK(r.se_abc == 0.0);
  CHECK(r.eta_pos_frac == 0.5);
  CHECK(r.region_frac[0] == doctest::Approx((1 + std::cos(d)) / 4).epsilon(1e-9));
  CHECK(r.region_frac[1] == doctest::Approx((1 - std::cos(d)) / 4).epsilon(1e-9));
  CHECK(r.e_abc == doctest::Approx(std::cos(d)).epsilon(1e-9));
}

TEST_CASE("partition measures match their closed forms") {
  {
    const PartitionMeasures p = partition_measures(0.0);
    CHECK(p.pp == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(p.mm == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(std::fabs(p.pm) <= 1e-10);
    CHECK(std::fabs(p.mp) <= 1e-10);
  }
  {
    const PartitionMeasures p = partition_measures(kPi / 2);
    for (const double v : {p.pp, p.pm, p.mp, p.mm})
      CHECK(v == doctest::Approx(0.25).epsilon(1e-10));
  }
  {
    const PartitionMeasures p = partition_measures(kPi);
    CHECK(std::fabs(p.pp) <= 1e-10);
    CHECK(std::fabs(p.mm) <= 1e-10);
    CHECK(p.pm == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(p.mp == doctest::Approx(0.5).epsilon(1e-10));
  }
  CHECK_THROWS_AS((void)partition_measures(-0.1), std::invalid_argument);
  CHECK_THROWS_AS((void)partition_measures(3.2), std::invalid_argument);

  const PartitionMeasures s = partition_measures_signed(-kPi / 2);
  for (const double v : {s.pp, s.pm, s.mp, s.mm})
    CHECK(v == doctest::Approx(0.25).epsilon(1e-10));
  const PartitionMeasures g = partition_measures_signed(-2.8);
  CHECK(g.pp == doctest::Approx((1 + std::cos(2.8)) / 4).epsilon(1e-9));
  CHECK(g.pm == doctest::Approx((1 - std::cos(2.8)) / 4).epsilon(1e-9));
  CHECK(g.pp + g.pm + g.mp + g.mm == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("cumulative-measure coordinate") {
  CHECK(measure_coordinate(-kPi) == 0.0);
  CHECK(measure_coordinate(-kPi / 2) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(measure_coordinate(0.0) == 2.0);
  CHECK(measure_coordinate(kPi / 2) == doctest::Approx(3.0).epsilon(1e-14));
}

TEST_CASE("transform is the rotation by (1 - cos delta) in measure") {
  for (const double d : {0.0, -kPi, 0.3, -2.5, kPi / 2, -kPi / 2, 3.0, -3.0})
    CHECK(rotation_identity_max_error(d) <= 1e-12);
  // the damaged transform is no longer that rotation
  CHECK(rotation_identity_max_error(2.0, 4096, damaged_transform()) >= 1e-2);
}

TEST_CASE("transform preserves the density pointwise (jacobian)") {
  CHECK(jacobian_invariance_max_error(1.0) <= 1e-6);
  CHECK(jacobian_invariance_max_error(-1.3) <= 1e-6);
  CHECK(jacobian_invariance_max_error(2.0, 2048, 0.05, 1e-5,
                                      damaged_transform()) >= 1e-2);
}

TEST_CASE("transform preserves the distribution of samples (KS)") {
  const std::size_t n = 200000;
  const double bound = 1.95 / std::sqrt(static_cast<double>(n));
  CHECK(ks_sampler(n, 0) <= bound);
  CHECK(ks_transformed(2.2, n, 0) <= bound);
  CHECK(ks_transformed(-0.8, n, 1) <= bound);
  CHECK(ks_transformed(2.2, n, 0, damaged_transform()) >
        ks_transformed(2.2, n, 0));
}
