#pragma once

// Shared per-trial decision algebra for the counting kernels. Works entirely
// on pre-acos quantities: the draw u encodes omega through cw = cos(omega)
// (cw = 4u-1 on the negative half, 3-4u on the positive half, both exact),
// so region membership is decided by comparing cw against cos(delta) with
// the monotonicity of cos on each half-circle. No acos/sin is ever needed to
// produce outcomes, which is what makes the trial loop vectorizable.
//
// The identities used (exact at every representable input, see unit tests):
//   s_base = S(omega)            (+1 on (0,pi] and at -pi, else -1)
//   s_a = flip * s_base          (flip = +1 iff eta > 0)
//   s_b = parity(region) * s_base
//   s_c = flip
// so s_a*s_b*s_c = parity(region), s_a*s_b = flip*parity, s_c*s_a = s_base.

#include <cstdint>
#include <stdexcept>

#include "ghzlab/angle.hpp"
#include "ghzlab/kernels.hpp"
#include "ghzlab/rng.hpp"

namespace ghzlab::kernels::detail {

struct BatchParams {
  std::uint64_t off_u = 0;
  std::uint64_t off_v = 0;
  double cos_delta = 1.0;
  bool delta_nonneg = true;
};

inline BatchParams make_params(std::uint64_t seed, double delta_eff) {
  if (!(delta_eff >= -kPi && delta_eff < kPi))
    throw std::invalid_argument("accumulate_trials: delta not canonical");
  BatchParams p;
  p.off_u = rng::stream_offset(seed, rng::Stream::HiddenU);
  p.off_v = rng::stream_offset(seed, rng::Stream::HiddenV);
  p.cos_delta = std::cos(delta_eff);
  p.delta_nonneg = delta_eff >= 0.0;
  return p;
}

// Region indices must match lhv::RegionTag: PP=0, PM=1, MP=2, MM=3.
inline void trial_step(const BatchParams& p, std::uint64_t index,
                       TrialCounts& c) {
  const double u = rng::to_unit(rng::counter_word(p.off_u, index));
  const double v = rng::to_unit(rng::counter_word(p.off_v, index));
  const double four_u = 4.0 * u;
  const bool lo = u < 0.5;
  const double cw = lo ? four_u - 1.0 : 3.0 - four_u;
  const double eta = kTwoPi * v - kPi;
  const bool eta_pos = eta > 0.0;
  const bool at_neg_pi = u == 0.0;   // omega = -pi
  const bool at_zero = u == 0.5;     // omega = 0
  const bool pos_side = u > 0.5;     // omega in (0, pi)

  int region;
  if (p.delta_nonneg) {
    if (at_neg_pi)
      region = 0;                                    // PP
    else if (pos_side)
      region = cw < p.cos_delta ? 0 : 1;             // PP : PM
    else if (at_zero)
      region = 3;                                    // MM
    else
      region = cw > -p.cos_delta ? 3 : 2;            // MM : MP
  } else {
    if (at_neg_pi)
      region = 2;                                    // MP
    else if (at_zero)
      region = 1;                                    // PM
    else if (!pos_side)
      region = cw <= p.cos_delta ? 0 : 1;            // PP : PM
    else
      region = cw >= -p.cos_delta ? 3 : 2;           // MM : MP
  }

  const int parity = (region == 0 || region == 3) ? +1 : -1;
  const int s_base = (pos_side || at_neg_pi) ? +1 : -1;
  const int flip = eta_pos ? +1 : -1;

  c.trials += 1;
  c.eta_pos += eta_pos ? 1 : 0;
  c.sum_a += flip * s_base;
  c.sum_b += parity * s_base;
  c.sum_c += flip;
  c.sum_ab += flip * parity;
  c.sum_bc += parity * s_base * flip;
  c.sum_ca += s_base;
  c.sum_abc += parity;
  c.sum_ab_eta_pos += eta_pos ? parity : 0;
  c.region[region] += 1;
}

void accumulate_scalar(const BatchParams& p, std::uint64_t first,
                       std::uint64_t count, TrialCounts& c);

// Defined (and only callable) when the build targets x86-64; guarded by
// avx2_available() at runtime.
void accumulate_avx2(const BatchParams& p, std::uint64_t first,
                     std::uint64_t count, TrialCounts& c);

}  // namespace ghzlab::kernels::detail
