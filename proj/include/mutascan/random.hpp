#pragma once

#include <cstdint>
#include <random>

namespace mutascan {

/// Seeded generator with platform-independent sampling.
///
/// The standard distributions are implementation-defined, so training runs
/// would differ between standard libraries. Only the raw mt19937_64 stream is
/// specified by the standard; everything here is derived from it directly.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform on [0, 1) with 53 bits of resolution.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform on [lo, hi]; returns lo when the range is empty.
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Uniform integer on [0, bound). `bound` must be positive.
  std::uint64_t below(std::uint64_t bound) {
    // Rejection sampling to remove modulo bias.
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t draw;
    do {
      draw = engine_();
    } while (draw >= limit);
    return draw % bound;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace mutascan

namespace mutascan {

/// Independent seed for a named sub-stream (splitmix64 finalizer), so one
/// user-facing seed can drive several generators.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace mutascan
