#pragma once

#include <cstdint>
#include <string>

namespace ghzlab::kernels {

/// Which trial-counting kernel to run. Auto picks AVX2 when the CPU has it.
enum class SimdMode { Auto, Scalar, Avx2 };

bool avx2_available();
SimdMode resolve(SimdMode requested);       // Auto -> concrete
SimdMode mode_from_env(SimdMode fallback);  // honors GHZLAB_SIMD
const char* mode_name(SimdMode m);

/// Sufficient statistics of a batch of trials at one fixed effective delta.
/// Everything is an exact integer, so merges are associative and commutative
/// and reports derived from them are byte-identical for any worker count or
/// kernel choice.
struct TrialCounts {
  std::uint64_t trials = 0;
  std::uint64_t eta_pos = 0;       // trials with eta > 0
  std::int64_t sum_a = 0;
  std::int64_t sum_b = 0;
  std::int64_t sum_c = 0;
  std::int64_t sum_ab = 0;
  std::int64_t sum_bc = 0;
  std::int64_t sum_ca = 0;
  std::int64_t sum_abc = 0;
  std::int64_t sum_ab_eta_pos = 0;  // sum of s_a*s_b over the eta > 0 trials
  std::uint64_t region[4] = {0, 0, 0, 0};  // indexed by RegionTag

  TrialCounts& operator+=(const TrialCounts& o);
  bool operator==(const TrialCounts& o) const;
};

/// Count trials [first, first + count) of hidden stream `seed` at canonical
/// effective delta. `n_workers` splits the range into contiguous chunks on
/// threads; the merged result does not depend on the split.
TrialCounts accumulate_trials(std::uint64_t seed, std::uint64_t first,
                              std::uint64_t count, double delta_eff,
                              SimdMode mode = SimdMode::Auto,
                              int n_workers = 1);

}  // namespace ghzlab::kernels
