// Portable pseudo-random stream. Every instance generator and sampler in the
// library draws from this, never from <random> engines or distributions, whose
// outputs are implementation-defined for floating point.
//
// Algorithm: xoshiro256** (Blackman & Vigna). The 256-bit state is filled by
// four successive outputs of SplitMix64 started at the 64-bit seed.
// A double in [0, 1) is (next() >> 11) · 2⁻⁵³; uniform(lo, hi) is
// lo + (hi − lo) · u. Both are exact IEEE-754 operations, so streams match
// bit for bit across compilers and platforms.
#pragma once

#include <array>
#include <cstdint>

namespace vi {

class Xoshiro256 {
 public:
  explicit Xoshiro256(std::uint64_t seed) noexcept {
    std::uint64_t sm = seed;
    for (auto& word : state_) word = splitmix64(sm);
  }

  std::uint64_t next() noexcept {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  /// Uniform in [0, 1).
  double unit() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * unit(); }

  static std::uint64_t splitmix64(std::uint64_t& x) noexcept {
    std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
  }

  std::array<std::uint64_t, 4> state_{};
};

/// Derives an independent stream seed from a base seed and a purpose tag.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) noexcept {
  std::uint64_t x = seed ^ (tag * 0xd1b54a32d192ed03ULL);
  return Xoshiro256::splitmix64(x);
}

}  // namespace vi
