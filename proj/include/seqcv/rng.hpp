#pragma once

#include <cstdint>

namespace seqcv {

// SplitMix64 finalizer. Full-avalanche 64-bit mix (Steele, Lea, Flood 2014).
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Quantile function of the standard normal (Wichura's PPND16 rational
// approximation, accurate to ~1e-15 relative). Pure arithmetic plus
// sqrt/log, so streams are reproducible independent of libstdc++'s
// distribution internals.
double inverse_normal_cdf(double p);

// Counter-based generator: the n-th output is a pure function of
// (key, n), where the key is derived from (root seed, replication
// index, stream role). Replication-parallel code hands each task its
// own (replication, role) pair and draws independently; results do not
// depend on scheduling or thread count.
class Rng {
  public:
    // Stream roles. Distinct roles give a task several independent
    // streams under one (seed, replication) pair.
    static constexpr std::uint64_t kErrors = 1;   // noise / resampling draws

    Rng(std::uint64_t root_seed, std::uint64_t replication, std::uint64_t role)
        : key_(mix64(mix64(mix64(root_seed) ^ replication) ^ role)) {}

    std::uint64_t next_u64() { return mix64(key_ + (++counter_) * 0x9E3779B97F4A7C15ULL); }

    // Uniform on [0, 1), 53-bit resolution.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Standard normal via the inverse CDF. The underlying uniform is
    // ((u >> 12) + 0.5) * 2^-52, strictly inside (0, 1), so the result
    // is always finite.
    double gaussian() {
        const double u = (static_cast<double>(next_u64() >> 12) + 0.5) * 0x1.0p-52;
        return inverse_normal_cdf(u);
    }

    // Unbiased integer in [0, n), n >= 1. Rejection on the short
    // initial segment that would cause modulo bias.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t threshold = (0 - n) % n;
        for (;;) {
            const std::uint64_t r = next_u64();
            if (r >= threshold) return r % n;
        }
    }

  private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace seqcv
