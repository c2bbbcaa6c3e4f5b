#pragma once

// Minimization of the lp-average erasure error over the dual chart of a
// frame: exact weighted-least-squares solution for the quadratic case,
// projected-free gradient descent with restarts otherwise, plus sufficient-
// condition reports and a sampled uniqueness probe.

#include <cstdint>
#include <vector>

#include "framelab/dual_chart.hpp"
#include "framelab/erasure.hpp"

namespace framelab {

enum class OptMethod { closed_form, gradient };

enum class Certificate { lower_bound_attained, stationary_point, budget_exhausted };

std::string certificate_name(Certificate c);

struct OptimizeConfig {
    AverageErrorSpec spec;
    OptMethod method = OptMethod::gradient;
    std::size_t max_iters = 400;
    double step_init = 0.5;
    double grad_tol = 1e-9;
    std::size_t restarts = 4;
    std::uint64_t seed = 1;
    bool nested_optimal = false;   // restrict level-m search to lower-level optima
    double restart_radius = 1.0;   // scale of random restart parameters
    std::uint64_t pattern_cap = kDefaultPatternCap;
};

struct TracePoint {
    std::size_t iter;
    double value;  // lp-average at this iterate
    double step;
};

struct OptimizeResult {
    CMatrix parameter;
    DualPair best;
    double value = 0.0;  // lp-average at the returned parameter
    Certificate certificate = Certificate::stationary_point;
    double grad_norm = 0.0;
    std::vector<TracePoint> trace;  // winning restart only
};

// Global minimizer of the (frobenius, m = 1, p = 2) average via the normal
// equations of the weighted least-squares problem.
OptimizeResult optimize_closed_form_frobenius(const DualChart& chart);

OptimizeResult optimize_gradient(const DualChart& chart, const OptimizeConfig& config);

// Dispatch on config.method; closed_form is only valid for
// (frobenius, m = 1, p = 2).
OptimizeResult optimize(const DualChart& chart, const OptimizeConfig& config);

// Sufficient-condition report for 1-erasure optimality of the canonical dual.
struct SufficiencyReport {
    bool holds = false;
    double level = 0.0;                  // the maximal score L
    std::vector<std::size_t> peak_set;   // indices attaining L
    std::vector<std::size_t> rest;       // the complement
    bool subspaces_intersect_trivially = false;
    bool peak_norms_equal = false;       // frobenius variant only; true otherwise
    bool rest_linearly_independent = false;
};

// Scores ||f_i|| * ||S^-1 f_i||; holds when the peak span and the rest span
// intersect trivially, the peak vectors share one norm, and the rest is
// linearly independent.
SufficiencyReport canonical_frobenius_sufficiency(const Frame& frame, double tol = 1e-8);

// Scores ||S^-1/2 f_i||; holds when the peak/rest spans intersect trivially
// and the rest is linearly independent.
SufficiencyReport canonical_spectral_sufficiency(const Frame& frame, double tol = 1e-8);

// Diagnostics used by the descent path and its tests: the minimized smooth
// objective average^p at a chart parameter, and its analytic Wirtinger
// gradient for the frobenius measure.
double average_power_objective(const DualChart& chart, const AverageErrorSpec& spec,
                               const CMatrix& parameter);
CMatrix frobenius_power_gradient(const DualChart& chart, const AverageErrorSpec& spec,
                                 const CMatrix& parameter);

struct ProbeResult {
    bool all_worse = false;    // every sampled dual scored strictly above canonical
    double min_excess = 0.0;   // smallest sampled value minus the canonical value
    double canonical_value = 0.0;
};

// Samples `trials` nonzero chart parameters of Frobenius norm at most
// `radius` and compares each dual's average error against the canonical one.
ProbeResult uniqueness_probe(const DualChart& chart, const AverageErrorSpec& spec,
                             std::size_t trials, double radius, std::uint64_t seed,
                             std::uint64_t pattern_cap = kDefaultPatternCap);

}  // namespace framelab
