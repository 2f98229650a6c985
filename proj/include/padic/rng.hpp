#pragma once

#include <cstdint>

namespace padic {

/// Counter-based splitmix64 stream: output i is mix(seed + i * GAMMA), so a
/// stream is fully determined by its seed and how many draws were taken.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t next() {
    ++counter_;
    return mix(seed_ + counter_ * 0x9E3779B97F4A7C15ULL);
  }

  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
  }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

/// Exactly uniform digit in T = {0, ..., p-1}: draws below the largest
/// multiple of p representable in 64 bits are kept, the rest rejected.
inline long draw_digit(CounterRng& rng, long p) {
  const auto up = static_cast<std::uint64_t>(p);
  const std::uint64_t overflow = ((0xFFFFFFFFFFFFFFFFULL % up) + 1) % up;
  const std::uint64_t cutoff = 0ULL - overflow;  // k*p, or 0 when p divides 2^64
  std::uint64_t r = rng.next();
  while (overflow != 0 && r >= cutoff) r = rng.next();
  return static_cast<long>(r % up);
}

/// Shard k of a job seeded s draws from stream derive_shard_seed(s, k); the
/// thread count only assigns shards to workers, never reorders draws.
inline std::uint64_t derive_shard_seed(std::uint64_t seed, std::uint64_t shard) {
  return CounterRng::mix(seed ^ CounterRng::mix(shard + 0x632BE59BD9B4E019ULL));
}

}  // namespace padic
