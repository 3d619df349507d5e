#pragma once

#include <cstdint>

namespace fledbat {

/// Deterministic pseudo-random generator, fixed for the whole repository.
///
/// SplitMix64 (Steele, Lea, Flood 2014). Chosen over std::mt19937 plus
/// standard distributions because the distribution algorithms are not
/// pinned by the C++ standard; this generator produces bit-identical
/// streams on every platform and toolchain, which the simulator's
/// determinism contract requires.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1), 53 significant bits.
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

    /// Exponentially distributed value with the given mean (inverse CDF).
    double exponential(double mean);

    /// Uniform index in [0, n). n must be positive.
    std::size_t pick_index(std::size_t n);

  private:
    std::uint64_t state_;
};

} // namespace fledbat
