#pragma once

#include <cstdint>

namespace splbee {

// Deterministic random stream used everywhere randomness is needed.
//
// The generator is xoshiro256** seeded through SplitMix64, with all
// distributions implemented by hand so that results are identical across
// platforms and standard libraries. Streams are split from a master seed via
//
//   state0 = sm(sm(sm(sm(master) ^ purpose) ^ a) ^ b)
//
// where sm is one SplitMix64 step; (purpose, a, b) identify the consumer
// (e.g. repair of bee b at iteration a). Two streams with different ids never
// share a sequence, which is what makes the parallel map over bees
// independent of worker count.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) {
    std::uint64_t x = seed;
    for (auto& s : state_) s = splitmix64(x);
  }

  static RngStream derive(std::uint64_t master, std::uint64_t purpose,
                          std::uint64_t a = 0, std::uint64_t b = 0) {
    std::uint64_t x = master;
    std::uint64_t s = splitmix64(x);
    x = s ^ purpose;
    s = splitmix64(x);
    x = s ^ a;
    s = splitmix64(x);
    x = s ^ b;
    s = splitmix64(x);
    return RngStream(s);
  }

  std::uint64_t next_u64() {
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

  std::uint32_t next_u32() { return static_cast<std::uint32_t>(next_u64() >> 32); }

  // Uniform in [0, 1), 53-bit resolution.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform in [0, n), unbiased (rejection sampling). n must be > 0.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t threshold = (0 - n) % n;
    for (;;) {
      const std::uint64_t r = next_u64();
      if (r >= threshold) return r % n;
    }
  }

  // Uniform integer in [lo, hi], inclusive.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  bool bernoulli(double p) { return next_double() < p; }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  static std::uint64_t splitmix64(std::uint64_t& x) {
    std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t state_[4];
};

// Stream purposes; keep stable, they are part of the reproducibility contract.
namespace stream {
inline constexpr std::uint64_t kAttributes = 1;
inline constexpr std::uint64_t kSynthetic = 2;
inline constexpr std::uint64_t kInitPosition = 3;
inline constexpr std::uint64_t kRoles = 4;
inline constexpr std::uint64_t kMovement = 5;
inline constexpr std::uint64_t kRepair = 6;
inline constexpr std::uint64_t kTruncate = 7;
}  // namespace stream

}  // namespace splbee
