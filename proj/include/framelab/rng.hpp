#pragma once

// Reproducible random sources. The engine is std::mt19937_64 (portable by
// the standard); distributions are hand-rolled so that streams are
// bit-identical across standard libraries and platforms.

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace framelab {

class RandomSource {
public:
    explicit RandomSource(std::uint64_t seed) : engine_(seed) {}

    // uniform in (0, 1)
    double uniform() {
        return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
    }

    // standard normal via Box-Muller
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = uniform(), u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    // standard complex normal: E|z|^2 = 1
    std::complex<double> complex_normal() {
        constexpr double inv_sqrt2 = 0.70710678118654752440;
        const double re = normal(), im = normal();
        return {re * inv_sqrt2, im * inv_sqrt2};
    }

    std::uint64_t bits() { return engine_(); }

private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

// Stable 64-bit FNV-1a, used to derive per-task seeds from names.
inline std::uint64_t fnv1a64(std::string_view text) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace framelab
