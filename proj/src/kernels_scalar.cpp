#include "trial_kernel.hpp"

namespace ghzlab::kernels::detail {

void accumulate_scalar(const BatchParams& p, std::uint64_t first,
                       std::uint64_t count, TrialCounts& c) {
  for (std::uint64_t i = 0; i < count; ++i) trial_step(p, first + i, c);
}

}  // namespace ghzlab::kernels::detail
