#ifndef MULTIRDPG_RNG_HPP
#define MULTIRDPG_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

namespace multirdpg {

// Seeded generator used for every random choice in the library. All variate
// transforms are written out here, on top of the raw mt19937_64 stream, so
// a given (seed, call sequence) reproduces bit-for-bit regardless of the
// standard library's distribution internals.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  bool bernoulli(double p) { return uniform() < p; }

  // Uniform integer in [0, n); unbiased via rejection.
  std::uint64_t below(std::uint64_t n) {
    if (n <= 1) return 0;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
      x = next_u64();
    } while (x >= limit);
    return x % n;
  }

  // Standard normal via Box-Muller (one variate per call; pair not cached).
  double normal() {
    const double u1 = 1.0 - uniform();  // in (0, 1]
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  }

  // Fisher-Yates over [first, last).
  template <typename Iter>
  void shuffle(Iter first, Iter last) {
    const auto n = static_cast<std::uint64_t>(last - first);
    for (std::uint64_t i = n; i > 1; --i) {
      std::swap(first[i - 1], first[below(i)]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

// Replicate b of a permutation test runs on seed ^ b, so replicates can be
// evaluated in any order (or concurrently) with identical results.
inline std::uint64_t replicate_seed(std::uint64_t seed, std::uint64_t b) {
  return seed ^ b;
}

// splitmix64 mix, used to derive independent sub-streams (e.g. one per
// simulation replicate) that cannot collide with the xor-derived seeds of
// permutation replicates nested inside them.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace multirdpg

#endif  // MULTIRDPG_RNG_HPP
