#pragma once

#include <cstdint>
#include <limits>

namespace rbcsp {

// SplitMix64 (Steele, Lea, Flood 2014). Used to expand seeds and as the
// stream-mixing function.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint64_t operator()() noexcept {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

// xoshiro256** 1.0 (Blackman, Vigna). State words are the first four outputs
// of SplitMix64(seed). One generator is seeded per instance.
class Xoshiro256 {
 public:
  using result_type = std::uint64_t;

  explicit Xoshiro256(std::uint64_t seed) noexcept {
    SplitMix64 sm(seed);
    for (auto& word : s_) word = sm();
  }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Uniform integer in [0, bound), bound >= 1. Rejection sampling: draws x
  // until x >= (2^64 - bound) mod bound, then returns x mod bound.
  std::uint64_t below(std::uint64_t bound) noexcept {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t x = (*this)();
      if (x >= threshold) return x % bound;
    }
  }

  // Uniform double in [0, 1) from the top 53 bits of one draw.
  double unit() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  // One draw; true with probability p (unit() < p).
  bool bernoulli(double p) noexcept { return unit() < p; }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t s_[4];
};

// Seed of stream `index` derived from `base_seed`:
//   SplitMix64 finalizer applied to base_seed ^ finalizer(index + golden),
// where finalizer(z) is the SplitMix64 output function. Stateless; a
// bijection in `index` for fixed base_seed, so distinct indices never collide.
std::uint64_t derive_stream(std::uint64_t base_seed, std::uint64_t index) noexcept;

}  // namespace rbcsp
