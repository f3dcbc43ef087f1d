#pragma once

#include <cmath>
#include <cstdint>

namespace holoq {

/// Counter-based PRNG (splitmix64 output function).  A stream is fully
/// determined by its key, so keyed sub-streams give bit-identical results
/// regardless of evaluation order or thread count.
struct CounterRng {
  std::uint64_t key = 0;
  std::uint64_t counter = 0;

  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Derives an independent stream from (seed, s1, s2), e.g. (seed, m, j).
  static CounterRng keyed(std::uint64_t seed, std::uint64_t s1 = 0, std::uint64_t s2 = 0) {
    CounterRng r;
    r.key = mix(seed ^ mix(s1 ^ mix(s2)));
    return r;
  }

  std::uint64_t next() { return mix(key + 0x9E3779B97F4A7C15ULL * (++counter)); }

  /// Uniform double in [0, 1) with 53-bit resolution.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, n) without modulo bias.
  std::uint32_t below(std::uint32_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v = next();
    while (v >= limit) v = next();
    return static_cast<std::uint32_t>(v % n);
  }

  /// Standard normal deviate (Box-Muller).
  double normal() {
    if (have_cached_) {
      have_cached_ = false;
      return cached_;
    }
    double u1 = uniform01();
    while (u1 <= 0.0) u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.28318530717958647692 * u2;
    cached_ = r * std::sin(a);
    have_cached_ = true;
    return r * std::cos(a);
  }

  /// Number of successes in `n` Bernoulli(p) trials.
  std::uint64_t binomial(std::uint64_t n, double p) {
    std::uint64_t hits = 0;
    for (std::uint64_t i = 0; i < n; ++i)
      if (uniform01() < p) ++hits;
    return hits;
  }

 private:
  double cached_ = 0.0;
  bool have_cached_ = false;
};

}  // namespace holoq
