#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

namespace empathy {

constexpr std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 1469598103934665603ull;
    for (char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    }
    return h;
}

// splitmix64 finalizer; decorrelates nearby (seed, stream, index) triples
constexpr std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// Deterministic random stream. All randomness in the toolkit flows from one
// config seed through named substreams, so reruns are bit-identical and
// per-index streams (e.g. Monte-Carlo paths) are independent of scheduling
// order. Gaussians use Box-Muller on raw 53-bit uniforms rather than
// std::normal_distribution, whose output is implementation-defined.
class Rng {
public:
    Rng(std::uint64_t seed, std::string_view stream, std::uint64_t index = 0)
        : engine_(mix64(mix64(seed) ^ mix64(fnv1a(stream) + index))) {}

    // uniform on [0,1)
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    // uniform on (0,1]
    double uniform_pos() {
        return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform_pos();
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double theta = 2.0 * 3.141592653589793238462643383279502884 * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

    std::uint64_t next_u64() { return engine_(); }

private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace empathy
