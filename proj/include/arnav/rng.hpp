#pragma once

#include <cmath>
#include <cstdint>

#include <Eigen/Dense>

namespace arnav {

/// Counter-based pseudorandom stream used for every synthetic artifact.
///
/// Output i is the SplitMix64 finalizer applied to seed + (i+1) * 2^64/phi,
/// i.e. a pure function of (seed, counter). The algorithm is part of the
/// file-format contract: golden sessions regenerate byte-identically on any
/// platform, and independent streams are derived by re-keying the seed
/// (split) rather than by sharing state.
///
/// Gaussian draws use Box-Muller on two fresh uniforms per draw (no cached
/// spare), so the stream position after n draws is always 2n counters.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed) : seed_(seed), counter_(0) {}

    std::uint64_t next_u64() {
        std::uint64_t z = seed_ + (++counter_) * 0x9E3779B97F4A7C15ull;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1) with 53 random bits.
    double uniform01() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Standard normal via Box-Muller (cosine branch).
    double normal() {
        const double u1 = 1.0 - uniform01();  // (0, 1], keeps log finite
        const double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(2.0 * 3.14159265358979323846 * u2);
    }

    double normal(double mean, double sd) { return mean + sd * normal(); }

    Eigen::Vector3d normal3(double sd) {
        return {sd * normal(), sd * normal(), sd * normal()};
    }

    /// Derives an independent stream keyed by `stream`. Children of the same
    /// parent with distinct keys never collide regardless of how many values
    /// either consumes.
    CounterRng split(std::uint64_t stream) const {
        std::uint64_t z = seed_ ^ (0xD1B54A32D192ED03ull * (stream + 1));
        z = (z ^ (z >> 29)) * 0xFF51AFD7ED558CCDull;
        z = (z ^ (z >> 32)) * 0xC4CEB9FE1A85EC53ull;
        return CounterRng(z ^ (z >> 29));
    }

    std::uint64_t seed() const { return seed_; }

private:
    std::uint64_t seed_;
    std::uint64_t counter_;
};

}  // namespace arnav
