#pragma once

#include <cstdint>

namespace ghzlab::rng {

// Counter-based generator: the splitmix64 finalizer applied to a Weyl
// sequence. out(seed, stream, i) is a pure function of its arguments, so any
// trial can be generated independently of all others (workers never share
// generator state) and vector lanes can advance counters by simple adds.

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Independent sub-streams per seed. Hidden-config draws never depend on the
// schedule stream (free-will requirement); the salts just decorrelate them.
enum class Stream : std::uint64_t {
  HiddenU = 0x243F6A8885A308D3ull,
  HiddenV = 0x13198A2E03707344ull,
  Schedule = 0xA4093822299F31D0ull,
};

inline std::uint64_t stream_offset(std::uint64_t seed, Stream s) {
  return mix64(seed + static_cast<std::uint64_t>(s));
}

inline std::uint64_t counter_word(std::uint64_t offset, std::uint64_t counter) {
  return mix64(offset + counter * kGolden);
}

/// Map a word to [0, 1) with 52 random bits (grid 2^-52). 52 rather than 53
/// so the SIMD lanes can convert via the exact exponent-or trick, which
/// requires the integer to fit the mantissa field.
inline double to_unit(std::uint64_t w) {
  return static_cast<double>(w >> 12) * 0x1.0p-52;
}

struct UnitPair {
  double u, v;
};

/// The two uniforms that drive trial `index` of hidden-config stream `seed`.
inline UnitPair hidden_unit_pair(std::uint64_t seed, std::uint64_t index) {
  return {to_unit(counter_word(stream_offset(seed, Stream::HiddenU), index)),
          to_unit(counter_word(stream_offset(seed, Stream::HiddenV), index))};
}

}  // namespace ghzlab::rng
