#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <utility>

namespace nbldpc {

/// Counter-free splitmix64 stream with keyed substream derivation.
///
/// Substreams are derived by hashing the master seed with a path of integer
/// ids (domain, trial, sample, ...). Two substreams with different paths are
/// statistically independent, so workers can generate them in any order and
/// still reproduce the exact sequence a serial run would see.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t state) : state_(state) {}

    static std::uint64_t hash(std::uint64_t x) {
        x += 0x9E3779B97F4A7C15ull;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
        return x ^ (x >> 31);
    }

    static SplitMix64 substream(std::uint64_t master, std::initializer_list<std::uint64_t> path) {
        std::uint64_t h = hash(master);
        for (std::uint64_t id : path) h = hash(h ^ id);
        return SplitMix64(h);
    }

    std::uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Unbiased draw from [0, n) by rejection.
    std::uint64_t bounded(std::uint64_t n) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v = next();
        while (v >= limit) v = next();
        return v % n;
    }

    /// Uniform double in [0, 1) with 53-bit resolution.
    double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Pair of independent standard Gaussians, Marsaglia polar method.
    std::pair<double, double> next_gaussian_pair() {
        double u, v, s;
        do {
            u = 2.0 * next_double() - 1.0;
            v = 2.0 * next_double() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double m = std::sqrt(-2.0 * std::log(s) / s);
        return {u * m, v * m};
    }

private:
    std::uint64_t state_;
};

}  // namespace nbldpc
