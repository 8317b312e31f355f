#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace hermqv::rng {

/// SplitMix64 hash step. Used to derive independent seed streams from a
/// master seed and arbitrary integer tags (replication index, grid N, ...).
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Counter-based stream derivation: stream(master, a), stream(master, a, b), ...
/// Streams are order-insensitive: the value depends only on the tags, not on
/// how many other streams have been drawn.
inline std::uint64_t derive_stream(std::uint64_t master, std::uint64_t a) {
    return splitmix64(master ^ splitmix64(a));
}
inline std::uint64_t derive_stream(std::uint64_t master, std::uint64_t a, std::uint64_t b) {
    return derive_stream(derive_stream(master, a), b);
}
inline std::uint64_t derive_stream(std::uint64_t master, std::uint64_t a, std::uint64_t b,
                                   std::uint64_t c) {
    return derive_stream(derive_stream(master, a, b), c);
}

/// Deterministic N(0,1) stream. Box-Muller on top of mt19937_64 so the
/// output does not depend on the standard library's normal_distribution.
class GaussianStream {
public:
    explicit GaussianStream(std::uint64_t seed) : eng_(seed) {}

    double operator()() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        // u1 in (0,1], u2 in [0,1)
        double u1 = (static_cast<double>(eng_() >> 11) + 1.0) * 0x1p-53;
        double u2 = static_cast<double>(eng_() >> 11) * 0x1p-53;
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    void fill(double* out, std::size_t n) {
        for (std::size_t i = 0; i < n; ++i) out[i] = (*this)();
    }

private:
    std::mt19937_64 eng_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace hermqv::rng
