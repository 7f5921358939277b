#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace hyperselect {

/// Seeded random stream with a fixed, platform-independent generation procedure.
///
/// The engine is std::mt19937_64, whose output sequence is fully specified by the
/// standard. Uniform variates use the top 53 bits of one engine output. Gaussian
/// variates use the basic Box-Muller transform and consume exactly two uniforms per
/// call (no cached second value), so the number of engine calls is a pure function
/// of the calls made on the stream.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed = 0) : engine_(seed) {}

    /// Derives an independent stream from a master seed and a stream index.
    static RandomStream derive(std::uint64_t master_seed, std::uint64_t stream_id) {
        return RandomStream(mix(mix(master_seed) ^ (stream_id + 0x632be59bd9b4e019ULL)));
    }

    /// U[0, 1)
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// U[lo, hi)
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [0, n). n must be positive.
    std::size_t index(std::size_t n) {
        auto k = static_cast<std::size_t>(uniform() * static_cast<double>(n));
        return k < n ? k : n - 1;
    }

    /// N(0, 1) by Box-Muller.
    double normal() {
        const double u1 = 1.0 - uniform();  // (0, 1]
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    std::uint64_t next_u64() { return engine_(); }

private:
    // SplitMix64 finalizer.
    static constexpr std::uint64_t mix(std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::mt19937_64 engine_;
};

}  // namespace hyperselect
