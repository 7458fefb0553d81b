#include "ghzlab/kernels.hpp"

#include <cstdlib>
#include <cstring>
#include <stdexcept>
#include <thread>
#include <vector>

#include "trial_kernel.hpp"

namespace ghzlab::kernels {

TrialCounts& TrialCounts::operator+=(const TrialCounts& o) {
  trials += o.trials;
  eta_pos += o.eta_pos;
  sum_a += o.sum_a;
  sum_b += o.sum_b;
  sum_c += o.sum_c;
  sum_ab += o.sum_ab;
  sum_bc += o.sum_bc;
  sum_ca += o.sum_ca;
  sum_abc += o.sum_abc;
  sum_ab_eta_pos += o.sum_ab_eta_pos;
  for (int r = 0; r < 4; ++r) region[r] += o.region[r];
  return *this;
}

bool TrialCounts::operator==(const TrialCounts& o) const {
  return trials == o.trials && eta_pos == o.eta_pos && sum_a == o.sum_a &&
         sum_b == o.sum_b && sum_c == o.sum_c && sum_ab == o.sum_ab &&
         sum_bc == o.sum_bc && sum_ca == o.sum_ca && sum_abc == o.sum_abc &&
         sum_ab_eta_pos == o.sum_ab_eta_pos && region[0] == o.region[0] &&
         region[1] == o.region[1] && region[2] == o.region[2] &&
         region[3] == o.region[3];
}

bool avx2_available() {
#if defined(__x86_64__) || defined(_M_X64)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

SimdMode mode_from_env(SimdMode fallback) {
  const char* e = std::getenv("GHZLAB_SIMD");
  if (e == nullptr) return fallback;
  if (std::strcmp(e, "scalar") == 0) return SimdMode::Scalar;
  if (std::strcmp(e, "avx2") == 0) return SimdMode::Avx2;
  if (std::strcmp(e, "auto") == 0) return SimdMode::Auto;
  return fallback;
}

SimdMode resolve(SimdMode requested) {
  if (requested == SimdMode::Auto)
    return avx2_available() ? SimdMode::Avx2 : SimdMode::Scalar;
  return requested;
}

const char* mode_name(SimdMode m) {
  switch (m) {
    case SimdMode::Auto: return "auto";
    case SimdMode::Scalar: return "scalar";
    case SimdMode::Avx2: return "avx2";
  }
  return "?";
}

TrialCounts accumulate_trials(std::uint64_t seed, std::uint64_t first,
                              std::uint64_t count, double delta_eff,
                              SimdMode mode, int n_workers) {
  const auto params = detail::make_params(seed, delta_eff);
  // The env override applies only when the caller left the choice open.
  const SimdMode m = resolve(mode == SimdMode::Auto
                                 ? mode_from_env(SimdMode::Auto)
                                 : mode);
  if (m == SimdMode::Avx2 && !avx2_available())
    throw std::runtime_error("AVX2 kernel requested but CPU lacks AVX2");
  const auto run = m == SimdMode::Avx2 ? detail::accumulate_avx2
                                       : detail::accumulate_scalar;

  if (n_workers < 1) n_workers = 1;
  if (n_workers == 1 || count < 4096) {
    TrialCounts c;
    run(params, first, count, c);
    return c;
  }

  // Contiguous chunks; integer merges make the split invisible in results.
  std::vector<TrialCounts> parts(n_workers);
  std::vector<std::thread> pool;
  const std::uint64_t base = count / n_workers;
  const std::uint64_t rem = count % n_workers;
  std::uint64_t at = first;
  for (int w = 0; w < n_workers; ++w) {
    const std::uint64_t len = base + (static_cast<std::uint64_t>(w) < rem);
    pool.emplace_back(run, std::cref(params), at, len, std::ref(parts[w]));
    at += len;
  }
  for (auto& t : pool) t.join();
  TrialCounts total;
  for (const auto& part : parts) total += part;
  return total;
}

}  // namespace ghzlab::kernels
