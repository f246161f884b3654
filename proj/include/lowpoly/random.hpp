#pragma once

#include <cstdint>
#include <random>

namespace lowpoly {

/// SplitMix64 finalizer. Used to derive independent stream seeds.
constexpr std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Seed for pipeline stage `stage` derived from a master seed.
constexpr std::uint64_t stage_seed(std::uint64_t master, std::uint64_t stage) {
    return mix64(mix64(master) ^ mix64(0xA0761D6478BD642FULL * (stage + 1)));
}

/// Seedable generator with platform-independent output.
///
/// The engine is std::mt19937_64, whose raw sequence is fixed by the standard.
/// The std distributions are implementation-defined, so conversions to reals
/// and bounded integers are done here.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Uniform integer in [0, n). `n` must be positive.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
        std::uint64_t v;
        do {
            v = engine_();
        } while (v >= limit);
        return v % n;
    }

    bool bernoulli(double p) { return uniform01() < p; }

  private:
    std::mt19937_64 engine_;
};

}  // namespace lowpoly
