#include "trial_kernel.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <bit>

namespace ghzlab::kernels::detail {

namespace {

inline __m256i mul64(__m256i a, __m256i b) {
  // 64x64 -> low 64 via 32-bit partial products (no native op before AVX512).
  const __m256i cross = _mm256_add_epi64(
      _mm256_mul_epu32(a, _mm256_srli_epi64(b, 32)),
      _mm256_mul_epu32(_mm256_srli_epi64(a, 32), b));
  return _mm256_add_epi64(_mm256_mul_epu32(a, b),
                          _mm256_slli_epi64(cross, 32));
}

inline __m256i mix64x4(__m256i z) {
  z = _mm256_xor_si256(z, _mm256_srli_epi64(z, 30));
  z = mul64(z, _mm256_set1_epi64x(static_cast<long long>(0xBF58476D1CE4E5B9ull)));
  z = _mm256_xor_si256(z, _mm256_srli_epi64(z, 27));
  z = mul64(z, _mm256_set1_epi64x(static_cast<long long>(0x94D049BB133111EBull)));
  return _mm256_xor_si256(z, _mm256_srli_epi64(z, 31));
}

// (w >> 12) * 2^-52, exactly as the scalar rng::to_unit computes it. The
// 52-bit integer is placed in a double's mantissa (exponent 2^52), the bias
// subtracted exactly, then scaled by a power of two (also exact).
inline __m256d unit_x4(__m256i w) {
  const __m256i mant = _mm256_srli_epi64(w, 12);
  const __m256d biased = _mm256_castsi256_pd(
      _mm256_or_si256(mant, _mm256_set1_epi64x(0x4330000000000000ll)));
  const __m256d val = _mm256_sub_pd(biased, _mm256_set1_pd(0x1.0p52));
  return _mm256_mul_pd(val, _mm256_set1_pd(0x1.0p-52));
}

inline int pm_sum4(int mask) {  // sum of 4 lanes of +-1 encoded as bits
  return 2 * std::popcount(static_cast<unsigned>(mask & 0xF)) - 4;
}

}  // namespace

void accumulate_avx2(const BatchParams& p, std::uint64_t first,
                     std::uint64_t count, TrialCounts& c) {
  const std::uint64_t blocks = count / 4;
  const __m256i lane = _mm256_set_epi64x(3, 2, 1, 0);
  const __m256i golden =
      _mm256_set1_epi64x(static_cast<long long>(rng::kGolden));
  // Weyl states of the four lanes; advancing by 4*golden per block keeps
  // lane i at off + (first + 4*b + i) * golden with exact wraparound.
  __m256i state_u = _mm256_add_epi64(
      _mm256_set1_epi64x(static_cast<long long>(p.off_u + first * rng::kGolden)),
      mul64(lane, golden));
  __m256i state_v = _mm256_add_epi64(
      _mm256_set1_epi64x(static_cast<long long>(p.off_v + first * rng::kGolden)),
      mul64(lane, golden));
  const __m256i step = _mm256_set1_epi64x(static_cast<long long>(4 * rng::kGolden));

  const __m256d half = _mm256_set1_pd(0.5);
  const __m256d zero = _mm256_set1_pd(0.0);
  const __m256d four = _mm256_set1_pd(4.0);
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d three = _mm256_set1_pd(3.0);
  const __m256d two_pi = _mm256_set1_pd(kTwoPi);
  const __m256d pi = _mm256_set1_pd(kPi);
  const __m256d cd = _mm256_set1_pd(p.cos_delta);
  const __m256d neg_cd = _mm256_set1_pd(-p.cos_delta);

  for (std::uint64_t b = 0; b < blocks; ++b) {
    const __m256d u = unit_x4(mix64x4(state_u));
    const __m256d v = unit_x4(mix64x4(state_v));
    state_u = _mm256_add_epi64(state_u, step);
    state_v = _mm256_add_epi64(state_v, step);

    const __m256d four_u = _mm256_mul_pd(four, u);
    const __m256d lo_mask = _mm256_cmp_pd(u, half, _CMP_LT_OQ);
    const __m256d cw = _mm256_blendv_pd(_mm256_sub_pd(three, four_u),
                                        _mm256_sub_pd(four_u, one), lo_mask);
    const __m256d eta = _mm256_sub_pd(_mm256_mul_pd(two_pi, v), pi);

    const int m_lo = _mm256_movemask_pd(lo_mask);
    const int m_negpi =
        _mm256_movemask_pd(_mm256_cmp_pd(u, zero, _CMP_EQ_OQ));
    const int m_zero =
        _mm256_movemask_pd(_mm256_cmp_pd(u, half, _CMP_EQ_OQ));
    const int m_pos = _mm256_movemask_pd(_mm256_cmp_pd(u, half, _CMP_GT_OQ));
    const int m_eta = _mm256_movemask_pd(_mm256_cmp_pd(eta, zero, _CMP_GT_OQ));
    const int m_neg = m_lo & ~m_negpi & 0xF;

    int pp, pm, mp, mm;
    if (p.delta_nonneg) {
      const int m_lt = _mm256_movemask_pd(_mm256_cmp_pd(cw, cd, _CMP_LT_OQ));
      const int m_gt =
          _mm256_movemask_pd(_mm256_cmp_pd(cw, neg_cd, _CMP_GT_OQ));
      pp = (m_negpi | (m_pos & m_lt)) & 0xF;
      pm = (m_pos & ~m_lt) & 0xF;
      mm = (m_zero | (m_neg & m_gt)) & 0xF;
      mp = (m_neg & ~m_gt) & 0xF;
    } else {
      const int m_le = _mm256_movemask_pd(_mm256_cmp_pd(cw, cd, _CMP_LE_OQ));
      const int m_ge =
          _mm256_movemask_pd(_mm256_cmp_pd(cw, neg_cd, _CMP_GE_OQ));
      pp = (m_neg & m_le) & 0xF;
      pm = (m_zero | (m_neg & ~m_le)) & 0xF;
      mm = (m_pos & m_ge) & 0xF;
      mp = (m_negpi | (m_pos & ~m_ge)) & 0xF;
    }

    const int m_par = pp | mm;            // parity positive
    const int m_base = m_pos | m_negpi;   // S(omega) positive

    c.trials += 4;
    c.eta_pos += std::popcount(static_cast<unsigned>(m_eta & 0xF));
    c.region[0] += std::popcount(static_cast<unsigned>(pp));
    c.region[1] += std::popcount(static_cast<unsigned>(pm));
    c.region[2] += std::popcount(static_cast<unsigned>(mp));
    c.region[3] += std::popcount(static_cast<unsigned>(mm));
    c.sum_a += pm_sum4(~(m_eta ^ m_base));
    c.sum_b += pm_sum4(~(m_par ^ m_base));
    c.sum_c += pm_sum4(m_eta);
    c.sum_ab += pm_sum4(~(m_eta ^ m_par));
    c.sum_bc += pm_sum4(m_par ^ m_base ^ m_eta);
    c.sum_ca += pm_sum4(m_base);
    c.sum_abc += pm_sum4(m_par);
    c.sum_ab_eta_pos +=
        2 * std::popcount(static_cast<unsigned>(m_eta & m_par & 0xF)) -
        std::popcount(static_cast<unsigned>(m_eta & 0xF));
  }

  // Remainder trials go through the shared scalar step (same arithmetic).
  for (std::uint64_t i = blocks * 4; i < count; ++i)
    trial_step(p, first + i, c);
}

}  // namespace ghzlab::kernels::detail

#else  // non-x86 build: symbol must exist, runtime dispatch never calls it

#include <stdexcept>

namespace ghzlab::kernels::detail {

void accumulate_avx2(const BatchParams&, std::uint64_t, std::uint64_t,
                     TrialCounts&) {
  throw std::logic_error("AVX2 kernel not built for this architecture");
}

}  // namespace ghzlab::kernels::detail

#endif
