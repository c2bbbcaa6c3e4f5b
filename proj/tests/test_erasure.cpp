#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>
#include <thread>

#include "framelab/dual_chart.hpp"
#include "framelab/eigen.hpp"
#include "framelab/erasure.hpp"
#include "framelab/errors.hpp"
#include "framelab/rng.hpp"

using namespace framelab;

namespace {

Frame example_frame() {
    CMatrix v(3, 2);
    v(0, 0) = 1.0;
    v(1, 1) = 1.0;
    v(2, 0) = 1.0;
    v(2, 1) = 1.0;
    return Frame::from_vectors(std::move(v));
}

DualPair random_pair(RandomSource& rng, std::size_t max_dim = 4, std::size_t max_count = 8) {
    const std::size_t dim = 1 + rng.bits() % max_dim;
    const std::size_t count = dim + rng.bits() % (max_count - dim + 1);
    const Frame frame = random_frame(count, dim, rng.bits());
    const DualChart chart = make_chart(frame);
    CMatrix param(chart_free_rows(chart), dim);
    for (std::size_t i = 0; i < param.rows(); ++i)
        for (std::size_t j = 0; j < param.cols(); ++j)
            param(i, j) = 0.4 * rng.complex_normal();
    return dual_from_parameter(chart, param);
}

ErasurePattern full_pattern(std::size_t count) {
    ErasurePattern p;
    for (std::size_t i = 0; i < count; ++i) p.indices.push_back(i);
    return p;
}

}  // namespace

TEST_CASE("pattern validation and counting") {
    const ErasurePattern empty;
    const ErasurePattern repeated{{0, 0}};
    const ErasurePattern unsorted{{2, 1}};
    const ErasurePattern out_of_range{{3}};
    const ErasurePattern valid{{0, 2}};
    CHECK_THROWS_AS(empty.validate(3), InvalidDimensions);
    CHECK_THROWS_AS(repeated.validate(3), InvalidDimensions);
    CHECK_THROWS_AS(unsorted.validate(3), InvalidDimensions);
    CHECK_THROWS_AS(out_of_range.validate(3), InvalidDimensions);
    CHECK_NOTHROW(valid.validate(3));

    CHECK(pattern_count(5, 2) == 10);
    CHECK(pattern_count(3, 3) == 1);
    CHECK(pattern_count(30, 15) == 155117520ull);
    CHECK(pattern_count(3, 4) == 0);
}

TEST_CASE("error operator") {
    const DualPair pair = canonical_dual(example_frame());

    // erasing everything reproduces the identity
    const CMatrix full = error_operator(pair, full_pattern(3));
    CHECK(max_abs_diff(full, CMatrix::identity(2)) <= 1e-14);

    // single erasure: rank one with trace <g_i, f_i>
    const CMatrix single = error_operator(pair, ErasurePattern{{0}});
    CHECK(std::abs(single.trace() - cxd{2.0 / 3.0, 0.0}) <= 1e-14);

    // harmonic(3,2), two erasures: squared Frobenius norm 10/9
    const DualPair parseval = canonical_dual(harmonic_frame(3, 2));
    const CMatrix two = error_operator(parseval, ErasurePattern{{0, 1}});
    const double norm = two.frobenius_norm();
    CHECK(norm * norm == doctest::Approx(10.0 / 9.0).epsilon(1e-13));
}

TEST_CASE("single-erasure closed forms on the worked example") {
    const DualPair pair = canonical_dual(example_frame());

    // ||f_3|| * ||g_3|| = sqrt(2) * sqrt(2)/3
    CHECK(measure_frobenius(pair, ErasurePattern{{2}}) ==
          doctest::Approx(2.0 / 3.0).epsilon(1e-13));

    for (std::size_t i = 0; i < 3; ++i)
        CHECK(measure_spectral_radius(pair, ErasurePattern{{i}}) ==
              doctest::Approx(2.0 / 3.0).epsilon(1e-13));

    // (|<f_1, g_1>| + ||f_1|| ||g_1||)/2 = (2 + sqrt(5))/6
    CHECK(measure_numerical_radius(pair, ErasurePattern{{0}}) ==
          doctest::Approx((2.0 + std::sqrt(5.0)) / 6.0).epsilon(1e-13));

    // full erasure: E = I
    CHECK(measure_frobenius(pair, full_pattern(3)) ==
          doctest::Approx(std::sqrt(2.0)).epsilon(1e-13));
    CHECK(measure_spectral_radius(pair, full_pattern(3)) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(measure_numerical_radius(pair, full_pattern(3)) ==
          doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("a vanishing diagonal inner product gives a nilpotent error operator") {
    // shift the canonical dual along the chart until <f_1, g_1> = 0
    const Frame frame = example_frame();
    const DualChart chart = make_chart(frame);
    CMatrix param(1, 2);
    param(0, 0) = -2.0 / 3.0 * std::sqrt(3.0);  // v = (-2/3, 0)
    const DualPair pair = dual_from_parameter(chart, param);
    CHECK(std::abs(inner(pair.frame, 0, pair.dual, 0)) <= 1e-12);
    CHECK(pair.dual.norm(0) > 0.1);
    CHECK(measure_spectral_radius(pair, ErasurePattern{{0}}) <= 1e-12);
    CHECK(spectral_radius_of(error_operator(pair, ErasurePattern{{0}})) <= 1e-12);
    // the numerical radius of a nonzero nilpotent stays positive
    CHECK(measure_numerical_radius(pair, ErasurePattern{{0}}) > 0.1);
}

TEST_CASE("closed forms agree with the direct operator route") {
    RandomSource rng(31);
    double worst_fro = 0.0, worst_rho = 0.0, worst_omega = 0.0;
    for (int rep = 0; rep < 60; ++rep) {
        const DualPair pair = random_pair(rng);
        const std::size_t count = pair.frame.count();
        // single erasures: all three closed forms
        for (std::size_t i = 0; i < count; ++i) {
            const ErasurePattern pattern{{i}};
            const CMatrix op = error_operator(pair, pattern);
            worst_fro = std::max(worst_fro, std::abs(measure_frobenius(pair, pattern) -
                                                     op.frobenius_norm()));
            worst_rho = std::max(worst_rho, std::abs(measure_spectral_radius(pair, pattern) -
                                                     spectral_radius_of(op)));
            worst_omega = std::max(worst_omega,
                                   std::abs(measure_numerical_radius(pair, pattern) -
                                            numerical_radius_of(op)));
        }
        // one random multi-erasure pattern
        if (count >= 3) {
            ErasurePattern pattern{{0, 1 + rng.bits() % (count - 1)}};
            const CMatrix op = error_operator(pair, pattern);
            worst_fro = std::max(worst_fro, std::abs(measure_frobenius(pair, pattern) -
                                                     op.frobenius_norm()));
        }
    }
    CHECK(worst_fro <= 1e-12);
    CHECK(worst_rho <= 1e-12);
    CHECK(worst_omega <= 1e-8);
}

TEST_CASE("measure ordering rho <= omega <= frobenius") {
    RandomSource rng(37);
    for (int rep = 0; rep < 40; ++rep) {
        const DualPair pair = random_pair(rng);
        const std::size_t count = pair.frame.count();
        const std::size_t m = 1 + rng.bits() % count;
        ErasurePattern pattern;
        for (std::size_t i = 0; i < count && pattern.indices.size() < m; ++i)
            if (rng.bits() % 2 == 0 || count - i == m - pattern.indices.size())
                pattern.indices.push_back(i);
        const double rho = measure_spectral_radius(pair, pattern);
        const double omega = measure_numerical_radius(pair, pattern);
        const double fro = measure_frobenius(pair, pattern);
        CHECK(rho <= omega + 1e-9);
        CHECK(omega <= fro + 1e-9);
    }
}

TEST_CASE("average error on the worked example") {
    const DualPair pair = canonical_dual(example_frame());
    for (double p : {1.5, 2.0, 4.0}) {
        const ErrorReport report =
            average_error(pair, AverageErrorSpec{Measure::spectral_radius, 1, p});
        CHECK(report.average == doctest::Approx(2.0 / 3.0).epsilon(1e-13));
        REQUIRE(report.lower_bound.has_value());
        CHECK(*report.lower_bound == doctest::Approx(2.0 / 3.0).epsilon(1e-13));
    }
    const ErrorReport fro = average_error(pair, AverageErrorSpec{Measure::frobenius, 1, 2.0});
    CHECK(fro.average == doctest::Approx(std::sqrt(14.0 / 27.0)).epsilon(1e-13));
    CHECK(fro.per_pattern.size() == 3);
}

TEST_CASE("average error report invariants") {
    RandomSource rng(53);
    const DualPair pair = random_pair(rng, 3, 7);
    const std::size_t count = pair.frame.count();
    for (std::size_t m : {std::size_t{1}, std::size_t{2}}) {
        if (m > count) continue;
        const AverageErrorSpec spec{Measure::frobenius, m, 2.5};
        const ErrorReport report = average_error(pair, spec);
        CHECK(report.per_pattern.size() == pattern_count(count, m));
        // average is recomputable from the per-pattern values
        double acc = 0.0;
        for (const PatternValue& pv : report.per_pattern) acc += std::pow(pv.value, spec.p);
        const double recomputed =
            std::pow(acc / static_cast<double>(report.per_pattern.size()), 1.0 / spec.p);
        CHECK(std::abs(recomputed - report.average) <= 1e-12 * std::max(1.0, report.average));
        CHECK(report.lower_bound.has_value() == (m == 1));
        // patterns arrive in lexicographic order
        for (std::size_t k = 1; k < report.per_pattern.size(); ++k)
            CHECK(report.per_pattern[k - 1].pattern.indices <
                  report.per_pattern[k].pattern.indices);
    }
}

TEST_CASE("p-independence when all pattern values agree") {
    const DualPair pair = canonical_dual(harmonic_frame(3, 2));
    double reference = -1.0;
    for (double p : {2.0, 3.0, 17.0, 64.0}) {
        const ErrorReport report =
            average_error(pair, AverageErrorSpec{Measure::frobenius, 2, p});
        if (reference < 0.0)
            reference = report.average;
        else
            CHECK(std::abs(report.average - reference) <= 1e-12);
    }
    CHECK(reference == doctest::Approx(std::sqrt(10.0 / 9.0)).epsilon(1e-12));
}

TEST_CASE("spec validation and the pattern budget") {
    const DualPair pair = canonical_dual(harmonic_frame(5, 2));
    CHECK_THROWS_AS(average_error(pair, AverageErrorSpec{Measure::frobenius, 0, 2.0}),
                    InvalidDimensions);
    CHECK_THROWS_AS(average_error(pair, AverageErrorSpec{Measure::frobenius, 6, 2.0}),
                    InvalidDimensions);
    CHECK_THROWS_AS(average_error(pair, AverageErrorSpec{Measure::frobenius, 1, 1.0}),
                    InvalidDimensions);
    CHECK_THROWS_AS(average_error(pair, AverageErrorSpec{Measure::frobenius, 2, 2.0}, 5),
                    PatternBudgetExceeded);
}

TEST_CASE("concurrent evaluation is race-free and bit-stable") {
    const Frame frame = random_frame(7, 3, 99);
    const DualPair pair = canonical_dual(frame);
    const AverageErrorSpec spec{Measure::frobenius, 2, 2.5};
    const double reference = average_error(pair, spec, kDefaultPatternCap, false).average;
    std::vector<std::thread> workers;
    std::vector<double> results(8, 0.0);
    for (std::size_t t = 0; t < results.size(); ++t)
        workers.emplace_back([&, t] {
            const DualPair local = canonical_dual(frame);
            results[t] = average_error(local, spec, kDefaultPatternCap, false).average;
        });
    for (std::thread& w : workers) w.join();
    for (double r : results) CHECK(r == reference);
}

TEST_CASE("desk-scale enumeration: N = 12, m = 4") {
    const DualPair pair = canonical_dual(harmonic_frame(12, 3));
    const ErrorReport report =
        average_error(pair, AverageErrorSpec{Measure::frobenius, 4, 2.0}, kDefaultPatternCap,
                      false);
    CHECK(report.per_pattern.empty());
    CHECK(pattern_count(12, 4) == 495);
    CHECK(report.average > frobenius_lower_bound(pair.frame));
    // spectral route through the eigensolver at the same size
    const double rho = average_error(pair, AverageErrorSpec{Measure::spectral_radius, 4, 2.0},
                                     kDefaultPatternCap, false)
                           .average;
    CHECK(rho <= report.average + 1e-9);
}

TEST_CASE("worst-case diagnostic dominates the average") {
    RandomSource rng(61);
    const DualPair pair = random_pair(rng, 3, 6);
    for (std::size_t m : {std::size_t{1}, std::size_t{2}}) {
        if (m > pair.frame.count()) continue;
        const double worst = worst_case_error(pair, Measure::frobenius, m);
        const ErrorReport report =
            average_error(pair, AverageErrorSpec{Measure::frobenius, m, 3.0});
        CHECK(worst >= report.average - 1e-12);
        double max_pattern = 0.0;
        for (const PatternValue& pv : report.per_pattern)
            max_pattern = std::max(max_pattern, pv.value);
        CHECK(worst == doctest::Approx(max_pattern).epsilon(1e-13));
    }
    CHECK_THROWS_AS(worst_case_error(pair, Measure::frobenius, 0), InvalidDimensions);
}

TEST_CASE("lower bound and the closed-form ETF average") {
    CHECK(frobenius_lower_bound(example_frame()) == doctest::Approx(2.0 / 3.0));
    CHECK(frobenius_lower_bound(harmonic_frame(8, 3)) == doctest::Approx(3.0 / 8.0));
    CHECK(frobenius_lower_bound(Frame::from_vectors(CMatrix::identity(4))) == 1.0);

    const Frame h32 = harmonic_frame(3, 2);
    CHECK(etf_frobenius_average(h32, 1) == doctest::Approx(2.0 / 3.0).epsilon(1e-13));
    CHECK(etf_frobenius_average(h32, 2) ==
          doctest::Approx(std::sqrt(10.0 / 9.0)).epsilon(1e-13));
    // m = N telescopes to sqrt(n)
    const Frame s3 = simplex_frame(3);
    CHECK(etf_frobenius_average(s3, 4) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));

    CHECK_THROWS_AS(etf_frobenius_average(example_frame(), 1), HypothesisViolated);
    CHECK_THROWS_AS(etf_frobenius_average(harmonic_frame(4, 2), 1), HypothesisViolated);
}
