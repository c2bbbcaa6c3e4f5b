#pragma once

// Erasure error operators, the three operator measures with their rank-one
// closed forms, and the lp-average over all m-element erasure patterns.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "framelab/cmatrix.hpp"
#include "framelab/frame.hpp"

namespace framelab {

enum class Measure { frobenius, spectral_radius, numerical_radius };

std::string measure_name(Measure m);

// Sorted index subset of {0, ..., N-1} (1-based in all user-facing I/O).
struct ErasurePattern {
    std::vector<std::size_t> indices;

    std::size_t erasures() const { return indices.size(); }
    // Throws InvalidDimensions unless indices are strictly increasing and
    // within [0, count).
    void validate(std::size_t count) const;
};

struct AverageErrorSpec {
    Measure measure = Measure::frobenius;
    std::size_t erasures = 1;  // m, 1 <= m <= N
    double p = 2.0;            // exponent, > 1
};

struct PatternValue {
    ErasurePattern pattern;
    double value;
};

struct ErrorReport {
    AverageErrorSpec spec;
    std::vector<PatternValue> per_pattern;  // lexicographic; empty if not kept
    double average = 0.0;
    std::optional<double> lower_bound;  // n/N for single-erasure specs
};

inline constexpr std::uint64_t kDefaultPatternCap = 1000000;

// C(count, erasures); saturates at uint64 max.
std::uint64_t pattern_count(std::size_t count, std::size_t erasures);

// E = T_G^* D T_F, the n x n operator f -> sum_{i in pattern} <f, f_i> g_i.
CMatrix error_operator(const DualPair& pair, const ErasurePattern& pattern);

// Frobenius norm of the error operator by the Gram closed form
// (||f_i|| * ||g_i|| when m = 1).
double measure_frobenius(const DualPair& pair, const ErasurePattern& pattern);

// Spectral radius; |<f_i, g_i>| when m = 1, eigenvalues otherwise.
double measure_spectral_radius(const DualPair& pair, const ErasurePattern& pattern);

// Numerical radius; (|<f_i, g_i>| + ||f_i|| ||g_i||)/2 when m = 1, the
// rotated-Hermitian-part search otherwise.
double measure_numerical_radius(const DualPair& pair, const ErasurePattern& pattern);

double evaluate_measure(const DualPair& pair, Measure measure, const ErasurePattern& pattern);

// lp-average of the chosen measure over all C(N, m) erasure patterns,
// enumerated lexicographically and accumulated in that order.
// Throws PatternBudgetExceeded past pattern_cap, InvalidDimensions for
// p <= 1 or m out of range.
ErrorReport average_error(const DualPair& pair, const AverageErrorSpec& spec,
                          std::uint64_t pattern_cap = kDefaultPatternCap,
                          bool keep_per_pattern = true);

// Diagnostic outside the lp-average model: the worst (maximal) measure value
// over all C(N, m) erasure patterns.
double worst_case_error(const DualPair& pair, Measure measure, std::size_t erasures,
                        std::uint64_t pattern_cap = kDefaultPatternCap);

// n / N.
double frobenius_lower_bound(const Frame& frame);

// Closed-form m-erasure Frobenius average attained by the canonical dual of
// an equiangular tight frame:
//   sqrt(m (n/N)^2 + m(m-1)(nN - n^2) / (N^2 (N-1))).
// Throws HypothesisViolated unless the frame is equiangular and tight at tol.
double etf_frobenius_average(const Frame& frame, std::size_t erasures, double tol = 1e-8);

}  // namespace framelab
