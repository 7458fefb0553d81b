#include <cstdlib>
#include <stdexcept>

#include "doctest.h"
#include "ghzlab/angle.hpp"
#include "ghzlab/kernels.hpp"

using namespace ghzlab;
using kernels::SimdMode;
using kernels::TrialCounts;

TEST_CASE("zero trials yields zero counts") {
  const TrialCounts t = kernels::accumulate_trials(0, 0, 0, 0.0, SimdMode::Scalar);
  CHECK(t.trials == 0);
  CHECK(t.sum_abc == 0);
  CHECK(t == TrialCounts{});
}

TEST_CASE("parity deltas give a constant triple product") {
  const std::uint64_t n = 10000;
  const TrialCounts t0 = kernels::accumulate_trials(1, 0, n, 0.0, SimdMode::Scalar);
  CHECK(t0.trials == n);
  CHECK(t0.sum_abc == static_cast<std::int64_t>(n));
  CHECK(t0.region[0] + t0.region[3] == n);  // PP u MM carries everything
  CHECK(t0.region[1] == 0);
  CHECK(t0.region[2] == 0);

  const TrialCounts tp = kernels::accumulate_trials(1, 0, n, -kPi, SimdMode::Scalar);
  CHECK(tp.sum_abc == -static_cast<std::int64_t>(n));
  CHECK(tp.region[1] + tp.region[2] == n);  // PM u MP carries everything
}

TEST_CASE("chunked accumulation merges to the whole") {
  const std::uint64_t n1 = 7321, n2 = 4679;
  for (const double d : {0.9, -2.2, 0.0}) {
    TrialCounts a = kernels::accumulate_trials(3, 0, n1, d, SimdMode::Scalar);
    const TrialCounts b = kernels::accumulate_trials(3, n1, n2, d, SimdMode::Scalar);
    const TrialCounts whole =
        kernels::accumulate_trials(3, 0, n1 + n2, d, SimdMode::Scalar);
    a += b;
    CHECK(a == whole);
  }
}

TEST_CASE("worker count never changes the counts") {
  const std::uint64_t n = 20000;
  const TrialCounts ref = kernels::accumulate_trials(0, 0, n, 1.1, SimdMode::Scalar, 1);
  for (const int workers : {2, 3, 7})
    CHECK(kernels::accumulate_trials(0, 0, n, 1.1, SimdMode::Scalar, workers) == ref);
}

TEST_CASE("simd kernel matches the scalar kernel bit for bit") {
  if (!kernels::avx2_available()) return;
  const std::uint64_t n = 100000;
  for (const double d : {0.0, -kPi, kPi / 3, -kPi / 3, 2.5, -0.7, 1e-9, -1e-9}) {
    const TrialCounts s = kernels::accumulate_trials(0, 0, n, d, SimdMode::Scalar);
    const TrialCounts v = kernels::accumulate_trials(0, 0, n, d, SimdMode::Avx2);
    CHECK(s == v);
  }
  // offset starts exercise the lane bootstrap
  const TrialCounts s = kernels::accumulate_trials(5, 13, 4097, -2.9, SimdMode::Scalar);
  const TrialCounts v = kernels::accumulate_trials(5, 13, 4097, -2.9, SimdMode::Avx2);
  CHECK(s == v);
}

TEST_CASE("mode resolution") {
  CHECK(kernels::resolve(SimdMode::Scalar) == SimdMode::Scalar);
  const SimdMode r = kernels::resolve(SimdMode::Auto);
  CHECK((r == SimdMode::Scalar || r == SimdMode::Avx2));
  if (!kernels::avx2_available()) {
    CHECK(r == SimdMode::Scalar);
    CHECK_THROWS_AS(
        (void)kernels::accumulate_trials(0, 0, 16, 0.0, SimdMode::Avx2),
        std::runtime_error);
  }
  CHECK(kernels::mode_name(SimdMode::Scalar) == doctest::String("scalar"));
  CHECK(kernels::mode_name(SimdMode::Avx2) == doctest::String("avx2"));
}

TEST_CASE("GHZLAB_SIMD overrides Auto only") {
  ::setenv("GHZLAB_SIMD", "scalar", 1);
  CHECK(kernels::mode_from_env(SimdMode::Auto) == SimdMode::Scalar);
  ::setenv("GHZLAB_SIMD", "bogus", 1);
  CHECK(kernels::mode_from_env(SimdMode::Auto) == SimdMode::Auto);
  ::unsetenv("GHZLAB_SIMD");
  CHECK(kernels::mode_from_env(SimdMode::Auto) == SimdMode::Auto);
}
