#pragma once

#include <cstdint>
#include <random>

namespace scheloc {

// Reproducible 64-bit RNG.
//
// The engine is std::mt19937_64, whose output sequence is fixed by the
// standard, so identical seeds give identical results on every platform.
// Bounded draws are implemented here (rejection sampling) instead of
// std::uniform_int_distribution, which is implementation-defined.
//
// Stream splitting: split(i) derives an independent child generator from
// the *original* seed and the stream index i only, never from the parent's
// draw position. Parallel consumers (e.g. multi-start search, one stream
// per start) are therefore replayable regardless of scheduling order.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), gen_(mix(seed)) {}

  std::uint64_t next_u64() { return gen_(); }

  // Uniform integer in [lo, hi], inclusive. Unbiased via rejection.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t range = static_cast<std::uint64_t>(hi - lo) + 1;
    if (range == 0) return static_cast<std::int64_t>(next_u64());  // full range
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % range + 1) % range;
    std::uint64_t v = next_u64();
    while (v > limit) v = next_u64();
    return lo + static_cast<std::int64_t>(v % range);
  }

  // Uniform real in [lo, hi) with 53 random mantissa bits.
  double uniform_real(double lo, double hi) {
    const double u = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    return lo + u * (hi - lo);
  }

  Rng split(std::uint64_t stream) const { return Rng(mix(seed_ ^ mix(stream + 0x9e3779b97f4a7c15ULL))); }

  std::uint64_t seed() const { return seed_; }

 private:
  // splitmix64 finalizer; whitens adjacent seeds and stream indices.
  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t seed_;
  std::mt19937_64 gen_;
};

}  // namespace scheloc
