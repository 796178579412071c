#pragma once

#include <cstdint>
#include <initializer_list>
#include <limits>
#include <random>

namespace vesselgraph {

/// Deterministic random stream.
///
/// Streams are derived from a global seed plus a key tuple (pipeline stage,
/// focal mmsi, window start, ...), so per-group generation is reproducible
/// no matter how work is scheduled across threads. All draws go through
/// hand-rolled mappings of raw engine output; std::*_distribution is
/// deliberately avoided because its output is implementation-defined.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(mix(seed)) {}

  static RandomStream keyed(std::uint64_t seed, std::initializer_list<std::uint64_t> keys) {
    std::uint64_t state = mix(seed ^ 0x9e3779b97f4a7c15ULL);
    for (std::uint64_t k : keys) state = mix(state ^ mix(k));
    RandomStream rs(0);
    rs.engine_.seed(state);
    return rs;
  }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform double in [lo, hi). Returns exactly lo when lo == hi.
  double uniform(double lo, double hi) {
    return lo + uniform01() * (hi - lo);
  }

  /// Unbiased uniform integer in [0, n). n must be >= 1.
  std::uint64_t below(std::uint64_t n) {
    if (n <= 1) return 0;
    // rejection sampling over the largest multiple of n
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - (std::numeric_limits<std::uint64_t>::max() % n);
    std::uint64_t x = next_u64();
    while (x >= limit) x = next_u64();
    return x % n;
  }

  /// +1 or -1 with equal probability.
  int sign() { return (next_u64() & 1ULL) ? 1 : -1; }

 private:
  static std::uint64_t mix(std::uint64_t x) {
    // splitmix64 finalizer
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  std::mt19937_64 engine_;
};

}  // namespace vesselgraph
