#pragma once

#include <cstdint>

#include "optlab/numkit/vector.hpp"

namespace optlab::numkit {

/// Counter-based pseudo-random stream. Output at state (seed, counter) is
/// splitmix64(seed + counter·0x9E3779B97F4A7C15): pure 64-bit integer
/// mixing, so the sequence is identical on every platform. The stream can
/// be forked by seed and replayed by counter.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed = 0, std::uint64_t counter = 0)
        : seed_(seed), counter_(counter) {}

    std::uint64_t seed() const { return seed_; }
    std::uint64_t counter() const { return counter_; }

    std::uint64_t next_u64() {
        std::uint64_t z = seed_ + counter_ * 0x9E3779B97F4A7C15ULL;
        ++counter_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0,1), 53-bit resolution.
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi);
    double normal(double mean, double sd);

    /// Index i with probability weights_i / Σ weights. Throws when the
    /// weights are not all ≥ 0 with positive sum.
    std::size_t choice(const Vector& weights);

    /// Uniform integer in [0, n).
    std::size_t uniform_index(std::size_t n);

private:
    std::uint64_t seed_;
    std::uint64_t counter_;
};

}  // namespace optlab::numkit
