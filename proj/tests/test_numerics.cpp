#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "framelab/cmatrix.hpp"
#include "framelab/eigen.hpp"
#include "framelab/errors.hpp"
#include "framelab/rng.hpp"

using namespace framelab;

namespace {

CMatrix random_matrix(std::size_t rows, std::size_t cols, RandomSource& rng) {
    CMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = rng.complex_normal();
    return m;
}

CMatrix random_hermitian(std::size_t n, RandomSource& rng) {
    CMatrix a = random_matrix(n, n, rng);
    CMatrix h(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) h(i, j) = 0.5 * (a(i, j) + std::conj(a(j, i)));
    return h;
}

// independent largest-eigenvalue oracle: best Rayleigh quotient over 10^4
// random unit vectors, refined by plain power iteration (matrix-vector
// products only, no factorization machinery)
double rayleigh_max(const CMatrix& a, RandomSource& rng) {
    const std::size_t n = a.rows();
    std::vector<cxd> best(n), v(n), w(n);
    double best_q = -1e300;
    for (int trial = 0; trial < 10000; ++trial) {
        double norm2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            v[i] = rng.complex_normal();
            norm2 += std::norm(v[i]);
        }
        cxd quad{0.0, 0.0};
        for (std::size_t i = 0; i < n; ++i) {
            cxd acc{0.0, 0.0};
            for (std::size_t j = 0; j < n; ++j) acc += a(i, j) * v[j];
            quad += acc * std::conj(v[i]);
        }
        const double q = quad.real() / norm2;
        if (q > best_q) {
            best_q = q;
            best = v;
        }
    }
    // shift to make the top eigenvalue dominant in modulus, then iterate
    const double shift = a.frobenius_norm() + 1.0;
    for (int iter = 0; iter < 500; ++iter) {
        for (std::size_t i = 0; i < n; ++i) {
            cxd acc = shift * best[i];
            for (std::size_t j = 0; j < n; ++j) acc += a(i, j) * best[j];
            w[i] = acc;
        }
        double norm = 0.0;
        for (std::size_t i = 0; i < n; ++i) norm += std::norm(w[i]);
        norm = std::sqrt(norm);
        for (std::size_t i = 0; i < n; ++i) best[i] = w[i] / norm;
    }
    cxd quad{0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) {
        cxd acc{0.0, 0.0};
        for (std::size_t j = 0; j < n; ++j) acc += a(i, j) * best[j];
        quad += acc * std::conj(best[i]);
    }
    return quad.real();
}

}  // namespace

TEST_CASE("hermitian eigenvalues: small known spectra") {
    CHECK(hermitian_eigenvalues(CMatrix::identity(2)) == std::vector<double>{1.0, 1.0});

    CMatrix a(2, 2);
    a(0, 0) = 2.0;
    a(0, 1) = 1.0;
    a(1, 0) = 1.0;
    a(1, 1) = 2.0;
    const auto eigs = hermitian_eigenvalues(a);
    REQUIRE(eigs.size() == 2);
    CHECK(eigs[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(eigs[1] == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("hermitian eigenvalues: rejects asymmetric input") {
    CMatrix a(2, 2);
    a(0, 1) = 1.0;
    CHECK_THROWS_AS(hermitian_eigenvalues(a), NotHermitian);
}

TEST_CASE("hermitian eigenvalues: Rayleigh oracle at 1e-8") {
    RandomSource rng(42);
    for (std::size_t n : {2u, 3u, 5u, 8u}) {
        const CMatrix a = random_hermitian(n, rng);
        const double lambda_max = hermitian_eigenvalues(a).back();
        CHECK(std::abs(lambda_max - rayleigh_max(a, rng)) <= 1e-8);
    }
}

TEST_CASE("hermitian eigenvalues agree with the Jacobi eigensystem") {
    RandomSource rng(11);
    for (std::size_t n : {2u, 4u, 7u, 12u}) {
        const CMatrix a = random_hermitian(n, rng);
        const auto ql = hermitian_eigenvalues(a);
        const auto jac = hermitian_eigensystem(a);
        REQUIRE(ql.size() == jac.values.size());
        for (std::size_t i = 0; i < n; ++i)
            CHECK(ql[i] == doctest::Approx(jac.values[i]).epsilon(1e-10));
        // residual A V = V diag
        CMatrix av = a * jac.vectors;
        CMatrix vd = jac.vectors;
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t i = 0; i < n; ++i) vd(i, j) *= jac.values[j];
        CHECK((av - vd).frobenius_norm() <= 1e-11 * std::max(1.0, a.frobenius_norm()));
    }
}

TEST_CASE("general eigenvalues: fixed cases") {
    CMatrix d(2, 2);
    d(0, 0) = 3.0;
    d(1, 1) = -1.0;
    auto eigs = general_eigenvalues(d);
    std::sort(eigs.begin(), eigs.end(),
              [](cxd a, cxd b) { return a.real() < b.real(); });
    CHECK(std::abs(eigs[0] - cxd{-1.0, 0.0}) <= 1e-12);
    CHECK(std::abs(eigs[1] - cxd{3.0, 0.0}) <= 1e-12);

    CMatrix nil(2, 2);
    nil(0, 1) = 1.0;
    for (const cxd& l : general_eigenvalues(nil)) CHECK(std::abs(l) <= 1e-12);

    // rank one g f* with f = e1, g = e1 + e2: spectrum {1, 0}
    CMatrix rank_one(2, 2);
    rank_one(0, 0) = 1.0;
    rank_one(1, 0) = 1.0;
    eigs = general_eigenvalues(rank_one);
    std::sort(eigs.begin(), eigs.end(),
              [](cxd a, cxd b) { return std::abs(a) < std::abs(b); });
    CHECK(std::abs(eigs[0]) <= 1e-12);
    CHECK(std::abs(eigs[1] - cxd{1.0, 0.0}) <= 1e-12);
}

TEST_CASE("general eigenvalues: trace identity and similarity invariance") {
    RandomSource rng(1234);
    for (std::size_t n : {2u, 3u, 5u, 9u, 14u}) {
        const CMatrix a = random_matrix(n, n, rng);
        const auto eigs = general_eigenvalues(a);
        REQUIRE(eigs.size() == n);
        cxd sum{0.0, 0.0};
        for (const cxd& l : eigs) sum += l;
        CHECK(std::abs(sum - a.trace()) <= 1e-10 * a.frobenius_norm());
    }
    // known spectrum transported through a random unitary similarity
    const std::size_t n = 6;
    std::vector<cxd> planted;
    for (std::size_t k = 0; k < n; ++k)
        planted.push_back(cxd{static_cast<double>(k) - 2.0, k % 2 ? 0.5 : -1.0});
    CMatrix d(n, n);
    for (std::size_t k = 0; k < n; ++k) d(k, k) = planted[k];
    const CMatrix q = hermitian_eigensystem(random_hermitian(n, rng)).vectors;
    const CMatrix m = q * d * q.adjoint();
    auto eigs = general_eigenvalues(m);
    std::sort(eigs.begin(), eigs.end(), [](cxd a, cxd b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    std::sort(planted.begin(), planted.end(), [](cxd a, cxd b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    for (std::size_t k = 0; k < n; ++k) CHECK(std::abs(eigs[k] - planted[k]) <= 1e-9);
}

TEST_CASE("general eigenvalues: clustered and repeated planted spectra") {
    RandomSource rng(2025);
    double worst = 0.0;
    for (int rep = 0; rep < 40; ++rep) {
        const std::size_t n = 2 + rng.bits() % 19;
        std::vector<cxd> planted(n);
        for (std::size_t k = 0; k < n; ++k) {
            if (k > 0 && rng.bits() % 3 == 0)
                planted[k] = planted[k - 1];  // exact repeats
            else if (k > 0 && rng.bits() % 3 == 0)
                planted[k] = planted[k - 1] + cxd{1e-7, 0.0};  // tight clusters
            else
                planted[k] = 3.0 * rng.complex_normal();
        }
        CMatrix d(n, n);
        for (std::size_t k = 0; k < n; ++k) d(k, k) = planted[k];
        const CMatrix q = hermitian_eigensystem(random_hermitian(n, rng)).vectors;
        const auto eigs = general_eigenvalues(q * d * q.adjoint());
        REQUIRE(eigs.size() == n);
        std::vector<bool> used(n, false);
        for (const cxd& l : eigs) {
            double best = 1e300;
            std::size_t best_k = 0;
            for (std::size_t k = 0; k < n; ++k)
                if (!used[k] && std::abs(l - planted[k]) < best) {
                    best = std::abs(l - planted[k]);
                    best_k = k;
                }
            used[best_k] = true;
            worst = std::max(worst, best);
        }
    }
    CHECK(worst <= 1e-10);
}

TEST_CASE("hermitian eigenvalues: degenerate planted spectra up to dim 30") {
    RandomSource rng(31415);
    double worst = 0.0;
    for (int rep = 0; rep < 25; ++rep) {
        const std::size_t n = 2 + rng.bits() % 29;
        std::vector<double> planted(n);
        for (std::size_t k = 0; k < n; ++k)
            planted[k] = (k > 0 && rng.bits() % 3 == 0) ? planted[k - 1] : 2.0 * rng.normal();
        CMatrix d(n, n);
        for (std::size_t k = 0; k < n; ++k) d(k, k) = planted[k];
        const CMatrix q = hermitian_eigensystem(random_hermitian(n, rng)).vectors;
        CMatrix m = q * d * q.adjoint();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                const cxd v = 0.5 * (m(i, j) + std::conj(m(j, i)));
                m(i, j) = v;
            }
        const auto eigs = hermitian_eigenvalues(m);
        std::sort(planted.begin(), planted.end());
        for (std::size_t k = 0; k < n; ++k)
            worst = std::max(worst, std::abs(eigs[k] - planted[k]));
    }
    CHECK(worst <= 1e-11);
}

TEST_CASE("orthonormal complement basis") {
    // rows (1,0),(0,1),(1,1): complement spanned by (1,1,-1)/sqrt(3)
    CMatrix a(3, 2);
    a(0, 0) = 1.0;
    a(1, 1) = 1.0;
    a(2, 0) = 1.0;
    a(2, 1) = 1.0;
    const CMatrix p = orthonormal_complement_basis(a);
    REQUIRE(p.rows() == 3);
    REQUIRE(p.cols() == 1);
    const double s = 1.0 / std::sqrt(3.0);
    CHECK(std::abs(p(0, 0) - cxd{s, 0.0}) <= 1e-12);
    CHECK(std::abs(p(1, 0) - cxd{s, 0.0}) <= 1e-12);
    CHECK(std::abs(p(2, 0) - cxd{-s, 0.0}) <= 1e-12);

    // full-rank square matrix: empty complement
    CHECK(orthonormal_complement_basis(CMatrix::identity(2)).cols() == 0);

    // random tall matrices: residual and orthonormality invariants
    RandomSource rng(5);
    for (int rep = 0; rep < 20; ++rep) {
        const std::size_t cols = 1 + rng.bits() % 4;
        const std::size_t rows = cols + rng.bits() % 5;
        const CMatrix m = random_matrix(rows, cols, rng);
        const CMatrix basis = orthonormal_complement_basis(m);
        CHECK(basis.cols() == rows - numerical_rank(m));
        CHECK(adjoint_times(m, basis).frobenius_norm() <= 10.0 * 1e-10 * m.frobenius_norm());
        CMatrix gram = adjoint_times(basis, basis);
        gram -= CMatrix::identity(basis.cols());
        CHECK(gram.frobenius_norm() <= 10.0 * 1e-10);
    }

    // rank-deficient input: complement keeps the lost directions
    const CMatrix thin = random_matrix(5, 2, rng);
    CMatrix fat(5, 4);
    for (std::size_t i = 0; i < 5; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
            fat(i, j) = thin(i, j);
            fat(i, j + 2) = 2.0 * thin(i, j);  // duplicated columns
        }
    }
    const CMatrix basis = orthonormal_complement_basis(fat);
    CHECK(basis.cols() == 3);
    CHECK(adjoint_times(fat, basis).frobenius_norm() <= 1e-9 * fat.frobenius_norm());
}

TEST_CASE("frobenius norm") {
    CHECK(CMatrix::identity(4).frobenius_norm() == doctest::Approx(2.0));
    CMatrix ones(2, 2);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) ones(i, j) = 1.0;
    CHECK(ones.frobenius_norm() == doctest::Approx(2.0));
    CHECK(CMatrix(3, 3).frobenius_norm() == 0.0);
}

TEST_CASE("cholesky solve and pseudo-inverse") {
    RandomSource rng(99);
    const std::size_t n = 5;
    const CMatrix b = random_matrix(n, n, rng);
    CMatrix spd = adjoint_times(b, b);
    spd += CMatrix::identity(n);
    const CMatrix rhs = random_matrix(n, 2, rng);
    const CMatrix x = hermitian_solve_spd(spd, rhs);
    CHECK((spd * x - rhs).frobenius_norm() <= 1e-10 * rhs.frobenius_norm());

    const CMatrix pinv = hermitian_pinv(spd);
    CHECK((spd * pinv - CMatrix::identity(n)).frobenius_norm() <= 1e-9);

    // singular PSD: pinv satisfies the Moore-Penrose identities
    const CMatrix thin = random_matrix(n, 2, rng);
    const CMatrix low = thin * thin.adjoint();  // rank <= 2
    const CMatrix low_pinv = hermitian_pinv(low);
    CHECK((low * low_pinv * low - low).frobenius_norm() <= 1e-9 * low.frobenius_norm());
    CHECK((low_pinv * low * low_pinv - low_pinv).frobenius_norm() <=
          1e-9 * low_pinv.frobenius_norm());

    CMatrix not_pd(2, 2);
    not_pd(0, 0) = 1.0;
    not_pd(1, 1) = -1.0;
    CHECK_THROWS_AS(hermitian_solve_spd(not_pd, CMatrix::identity(2)), SingularFrameOperator);
}

TEST_CASE("null space basis") {
    RandomSource rng(3);
    const CMatrix thin = random_matrix(3, 5, rng);  // wide: null space dim >= 2
    const CMatrix basis = null_space_basis(thin);
    CHECK(basis.cols() == 5 - numerical_rank(thin));
    CHECK((thin * basis).frobenius_norm() <= 1e-9 * thin.frobenius_norm());
}

TEST_CASE("spectral radius and numerical radius") {
    RandomSource rng(17);

    // Hermitian operators: omega = rho = max |eigenvalue|
    for (int rep = 0; rep < 5; ++rep) {
        const std::size_t n = 2 + rng.bits() % 3;
        CMatrix a = random_matrix(n, n, rng);
        CMatrix h(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) h(i, j) = 0.5 * (a(i, j) + std::conj(a(j, i)));
        const auto eigs = hermitian_eigenvalues(h);
        const double expected = std::max(std::abs(eigs.front()), std::abs(eigs.back()));
        CHECK(spectral_radius_of(h) == doctest::Approx(expected).epsilon(1e-10));
        CHECK(numerical_radius_of(h) == doctest::Approx(expected).epsilon(1e-9));
    }

    // nilpotent 2x2: rho = 0, omega = 1/2, both below the Frobenius norm
    CMatrix nil(2, 2);
    nil(0, 1) = 1.0;
    CHECK(spectral_radius_of(nil) <= 1e-12);
    CHECK(numerical_radius_of(nil) == doctest::Approx(0.5).epsilon(1e-9));

    // ordering rho <= omega <= frobenius on random operators
    for (int rep = 0; rep < 10; ++rep) {
        const std::size_t n = 2 + rng.bits() % 3;
        const CMatrix a = random_matrix(n, n, rng);
        const double rho = spectral_radius_of(a);
        const double omega = numerical_radius_of(a);
        CHECK(rho <= omega + 1e-9);
        CHECK(omega <= a.frobenius_norm() + 1e-9);
        // omega >= frobenius/..., no: omega >= rho and omega >= |trace|/n hold;
        // also omega is at least half the operator norm, checked loosely via
        // the largest rotated Hermitian part at theta = 0 and pi/2
        CHECK(omega >= 0.0);
    }
}

TEST_CASE("singular values and rank") {
    RandomSource rng(23);
    const CMatrix a = random_matrix(6, 3, rng);
    CHECK(numerical_rank(a) == 3);
    const auto sv = singular_values(a);
    REQUIRE(sv.size() == 3);
    CHECK(sv[0] >= sv[1]);
    CHECK(sv[1] >= sv[2]);
    // scaling one column to zero drops the rank
    CMatrix b = a;
    for (std::size_t i = 0; i < b.rows(); ++i) b(i, 2) = 0.0;
    CHECK(numerical_rank(b) == 2);
}
