#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "framelab/kernels.hpp"
#include "framelab/rng.hpp"

using namespace framelab;
using kernels::cxd;

namespace {

std::vector<cxd> random_vector(std::size_t len, RandomSource& rng) {
    std::vector<cxd> out(len);
    for (cxd& z : out) z = rng.complex_normal();
    return out;
}

}  // namespace

TEST_CASE("every available backend matches the scalar reference") {
    const auto& scalar = kernels::scalar_backend();
    RandomSource rng(0x5eedull);
    for (const kernels::Backend* backend : kernels::available_backends()) {
        CAPTURE(backend->name);
        for (std::size_t len : {0u, 1u, 2u, 3u, 5u, 8u, 17u, 64u, 129u}) {
            const auto x = random_vector(len, rng);
            const auto y = random_vector(len, rng);
            const double scale = std::sqrt(scalar.norm2_sq(x.data(), len) + 1.0);

            const cxd dot_ref = scalar.dot_conj(x.data(), y.data(), len);
            const cxd dot_simd = backend->dot_conj(x.data(), y.data(), len);
            CHECK(std::abs(dot_ref - dot_simd) <= 1e-13 * scale * scale);

            CHECK(scalar.norm2_sq(x.data(), len) ==
                  doctest::Approx(backend->norm2_sq(x.data(), len)).epsilon(1e-13));

            const cxd a{0.37, -1.2};
            auto y_ref = y;
            auto y_simd = y;
            scalar.axpy(a, x.data(), y_ref.data(), len);
            backend->axpy(a, x.data(), y_simd.data(), len);
            for (std::size_t i = 0; i < len; ++i)
                CHECK(std::abs(y_ref[i] - y_simd[i]) <= 1e-13 * scale);

            auto x_ref = x;
            auto x_simd = x;
            scalar.scale(a, x_ref.data(), len);
            backend->scale(a, x_simd.data(), len);
            for (std::size_t i = 0; i < len; ++i)
                CHECK(std::abs(x_ref[i] - x_simd[i]) <= 1e-13 * scale);
        }
    }
}

TEST_CASE("dot_conj against itself is the squared norm") {
    RandomSource rng(7);
    for (const kernels::Backend* backend : kernels::available_backends()) {
        const auto x = random_vector(33, rng);
        const cxd dot = backend->dot_conj(x.data(), x.data(), x.size());
        CHECK(dot.real() == doctest::Approx(backend->norm2_sq(x.data(), x.size())).epsilon(1e-14));
        CHECK(std::abs(dot.imag()) <= 1e-14 * dot.real());
    }
}

TEST_CASE("conjugation sits on the second argument") {
    for (const kernels::Backend* backend : kernels::available_backends()) {
        const cxd x[1] = {cxd{0.0, 1.0}};   // i
        const cxd y[1] = {cxd{1.0, 1.0}};   // 1 + i
        // i * conj(1 + i) = i * (1 - i) = 1 + i
        const cxd dot = backend->dot_conj(x, y, 1);
        CHECK(dot.real() == doctest::Approx(1.0));
        CHECK(dot.imag() == doctest::Approx(1.0));
    }
}

TEST_CASE("backend selection is sticky and reversible") {
    const std::string initial = kernels::active_backend().name;
    CHECK(kernels::set_active_backend("scalar"));
    CHECK(std::string(kernels::active_backend().name) == "scalar");
    CHECK_FALSE(kernels::set_active_backend("definitely-not-a-backend"));
    CHECK(std::string(kernels::active_backend().name) == "scalar");
    CHECK(kernels::set_active_backend(initial));
}
