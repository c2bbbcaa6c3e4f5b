#include "framelab/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "framelab/eigen.hpp"
#include "framelab/errors.hpp"
#include "framelab/kernels.hpp"
#include "framelab/rng.hpp"

namespace framelab {

std::string certificate_name(Certificate c) {
    switch (c) {
        case Certificate::lower_bound_attained: return "lower_bound_attained";
        case Certificate::stationary_point: return "stationary_point";
        case Certificate::budget_exhausted: return "budget_exhausted";
    }
    return "?";
}

namespace {

// Objective evaluation on raw dual analysis matrices (base + P B), bypassing
// per-evaluation frame validation. Matches average_error numerically: same
// closed forms, same enumeration order, same lp aggregation.
class Objective {
public:
    Objective(const DualChart& chart, AverageErrorSpec spec, std::uint64_t pattern_cap)
        : chart_(chart), spec_(spec) {
        const std::size_t count = chart.frame.count();
        if (spec_.erasures < 1 || spec_.erasures > count)
            throw InvalidDimensions("optimizer: erasure count out of range");
        if (!(spec_.p > 1.0))
            throw InvalidDimensions("optimizer: exponent p must exceed 1");
        total_ = pattern_count(count, spec_.erasures);
        if (total_ > pattern_cap)
            throw PatternBudgetExceeded("optimizer: pattern budget exceeded");
        // frame Gram: gram_f(i, j) = <f_j, f_i>
        gram_f_ = CMatrix(count, count);
        for (std::size_t i = 0; i < count; ++i)
            for (std::size_t j = 0; j < count; ++j)
                gram_f_(i, j) = inner(chart.frame, j, chart.frame, i);
    }

    const AverageErrorSpec& spec() const { return spec_; }

    CMatrix dual_analysis(const CMatrix& param) const {
        CMatrix t = chart_.base;
        if (param.rows() > 0) t += chart_.complement * param;
        return t;
    }

    // lp-average of the measure over all patterns, from the dual analysis
    // matrix (rows are conj(g_i)).
    double average(const CMatrix& dual_analysis) const {
        const std::size_t count = chart_.frame.count();
        const std::size_t m = spec_.erasures;
        std::vector<double> values;
        values.reserve(static_cast<std::size_t>(total_));
        ErasurePattern pattern;
        pattern.indices.resize(m);
        for (std::size_t k = 0; k < m; ++k) pattern.indices[k] = k;

        CMatrix cross;
        if (spec_.measure == Measure::frobenius) {
            // cross(j, k) = <g_j, g_k> <f_k, f_j>
            cross = CMatrix(count, count);
            const std::size_t dim = chart_.frame.dim();
            for (std::size_t j = 0; j < count; ++j)
                for (std::size_t k = 0; k < count; ++k) {
                    const cxd gg = std::conj(
                        kernels::dot_conj(dual_analysis.row(j), dual_analysis.row(k), dim));
                    cross(j, k) = gg * gram_f_(j, k);
                }
        }
        for (;;) {
            values.push_back(pattern_value(dual_analysis, cross, pattern));
            std::size_t k = m;
            while (k > 0 && pattern.indices[k - 1] == count - m + (k - 1)) --k;
            if (k == 0) break;
            ++pattern.indices[k - 1];
            for (std::size_t j = k; j < m; ++j) pattern.indices[j] = pattern.indices[j - 1] + 1;
        }
        double vmax = 0.0;
        for (double v : values) vmax = std::max(vmax, v);
        if (vmax == 0.0) return 0.0;
        double acc = 0.0;
        for (double v : values) acc += std::pow(v / vmax, spec_.p);
        return vmax * std::pow(acc / static_cast<double>(values.size()), 1.0 / spec_.p);
    }

    double average_at(const CMatrix& param) const { return average(dual_analysis(param)); }

    // Analytic Wirtinger gradient of average^p for the frobenius measure,
    // with respect to conj(B).
    CMatrix frobenius_power_gradient(const CMatrix& param) const {
        const std::size_t count = chart_.frame.count();
        const std::size_t dim = chart_.frame.dim();
        const std::size_t m = spec_.erasures;
        const CMatrix tg = dual_analysis(param);
        CMatrix cross(count, count);
        for (std::size_t j = 0; j < count; ++j)
            for (std::size_t k = 0; k < count; ++k) {
                const cxd gg = std::conj(kernels::dot_conj(tg.row(j), tg.row(k), dim));
                cross(j, k) = gg * gram_f_(j, k);
            }
        CMatrix grad_tg(count, dim);
        ErasurePattern pattern;
        pattern.indices.resize(m);
        for (std::size_t k = 0; k < m; ++k) pattern.indices[k] = k;
        const double exponent = spec_.p / 2.0 - 1.0;
        for (;;) {
            double value_sq = 0.0;
            for (std::size_t j : pattern.indices)
                for (std::size_t k : pattern.indices) value_sq += cross(j, k).real();
            value_sq = std::max(value_sq, 0.0);
            if (value_sq > 1e-300) {
                const double weight = 0.5 * spec_.p * std::pow(value_sq, exponent) /
                                      static_cast<double>(total_);
                // rows of K T_G restricted to the pattern:
                // (K T_G)[i, :] = sum_j gram_f(i, j) T_G[j, :]
                for (std::size_t i : pattern.indices)
                    for (std::size_t j : pattern.indices)
                        kernels::axpy(weight * gram_f_(i, j), tg.row(j), grad_tg.row(i), dim);
            }
            std::size_t k = m;
            while (k > 0 && pattern.indices[k - 1] == count - m + (k - 1)) --k;
            if (k == 0) break;
            ++pattern.indices[k - 1];
            for (std::size_t j = k; j < m; ++j) pattern.indices[j] = pattern.indices[j - 1] + 1;
        }
        return adjoint_times(chart_.complement, grad_tg);
    }

private:
    double pattern_value(const CMatrix& tg, const CMatrix& cross,
                         const ErasurePattern& pattern) const {
        const std::size_t dim = chart_.frame.dim();
        switch (spec_.measure) {
            case Measure::frobenius: {
                double acc = 0.0;
                for (std::size_t j : pattern.indices)
                    for (std::size_t k : pattern.indices) acc += cross(j, k).real();
                return std::sqrt(std::max(acc, 0.0));
            }
            case Measure::spectral_radius: {
                if (pattern.erasures() == 1) {
                    const std::size_t i = pattern.indices[0];
                    // <f_i, g_i> = sum_k f_i[k] T_G[i, k]
                    cxd acc{0.0, 0.0};
                    const cxd* f = chart_.frame.vec(i);
                    const cxd* t = tg.row(i);
                    for (std::size_t k = 0; k < dim; ++k) acc += f[k] * t[k];
                    return std::abs(acc);
                }
                return spectral_radius_of(pattern_operator(tg, pattern));
            }
            case Measure::numerical_radius: {
                if (pattern.erasures() == 1) {
                    const std::size_t i = pattern.indices[0];
                    cxd acc{0.0, 0.0};
                    const cxd* f = chart_.frame.vec(i);
                    const cxd* t = tg.row(i);
                    for (std::size_t k = 0; k < dim; ++k) acc += f[k] * t[k];
                    const double gnorm = std::sqrt(kernels::norm2_sq(t, dim));
                    return 0.5 * (std::abs(acc) + chart_.frame.norm(i) * gnorm);
                }
                return numerical_radius_of(pattern_operator(tg, pattern));
            }
        }
        throw Error("objective: unknown measure");
    }

    CMatrix pattern_operator(const CMatrix& tg, const ErasurePattern& pattern) const {
        const std::size_t dim = chart_.frame.dim();
        CMatrix e(dim, dim);
        std::vector<cxd> conj_f(dim);
        for (std::size_t i : pattern.indices) {
            const cxd* f = chart_.frame.vec(i);
            const cxd* t = tg.row(i);
            for (std::size_t k = 0; k < dim; ++k) conj_f[k] = std::conj(f[k]);
            for (std::size_t a = 0; a < dim; ++a)
                kernels::axpy(std::conj(t[a]), conj_f.data(), e.row(a), dim);
        }
        return e;
    }

    const DualChart& chart_;
    AverageErrorSpec spec_;
    std::uint64_t total_ = 0;
    CMatrix gram_f_;
};

CMatrix random_parameter(const DualChart& chart, RandomSource& rng, double radius) {
    const std::size_t rows = chart_free_rows(chart), cols = chart.frame.dim();
    CMatrix b(rows, cols);
    if (rows == 0) return b;
    const double scale = radius / std::sqrt(static_cast<double>(rows * cols));
    for (;;) {
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) b(i, j) = scale * rng.complex_normal();
        const double norm = b.frobenius_norm();
        if (norm < 0.01 * radius) continue;  // probe parameters must stay nonzero
        if (norm > radius) b *= cxd{radius / norm, 0.0};
        return b;
    }
}

}  // namespace

OptimizeResult optimize_closed_form_frobenius(const DualChart& chart) {
    const std::size_t count = chart.frame.count();
    const std::size_t free_rows = chart_free_rows(chart);
    const AverageErrorSpec spec{Measure::frobenius, 1, 2.0};

    CMatrix param(free_rows, chart.frame.dim());
    if (free_rows > 0) {
        // minimize ||W^(1/2) (base + P B)||_F^2, W = diag(||f_i||^2)
        CMatrix weighted_p = chart.complement;
        CMatrix weighted_base = chart.base;
        for (std::size_t i = 0; i < count; ++i) {
            const cxd w{chart.frame.norm_sq(i), 0.0};
            kernels::scale(w, weighted_p.row(i), weighted_p.cols());
            kernels::scale(w, weighted_base.row(i), weighted_base.cols());
        }
        const CMatrix normal = adjoint_times(chart.complement, weighted_p);
        CMatrix rhs = adjoint_times(chart.complement, weighted_base);
        rhs *= cxd{-1.0, 0.0};
        param = hermitian_pinv(normal) * rhs;
    }

    DualPair best = dual_from_parameter(chart, param);
    const ErrorReport report = average_error(best, spec, kDefaultPatternCap, false);

    // residual gradient of the quadratic at the solution
    CMatrix tg = chart.base;
    if (free_rows > 0) tg += chart.complement * param;
    for (std::size_t i = 0; i < count; ++i)
        kernels::scale(cxd{chart.frame.norm_sq(i), 0.0}, tg.row(i), tg.cols());
    const double grad_norm = adjoint_times(chart.complement, tg).frobenius_norm();

    const double bound = frobenius_lower_bound(chart.frame);
    OptimizeResult result{std::move(param),
                          std::move(best),
                          report.average,
                          std::abs(report.average - bound) <= 1e-9
                              ? Certificate::lower_bound_attained
                              : Certificate::stationary_point,
                          grad_norm,
                          {TracePoint{0, report.average, 0.0}}};
    return result;
}

namespace {

struct DescentOutcome {
    CMatrix param;
    double power_value;   // minimized objective (average^p plus penalties)
    double average;       // plain lp-average at param
    double grad_norm;
    Certificate certificate;
    std::vector<TracePoint> trace;
};

class PenalizedObjective {
public:
    PenalizedObjective(const Objective& main, const std::vector<const Objective*>& lower,
                       const std::vector<double>& lower_limits)
        : main_(main), lower_(lower), lower_limits_(lower_limits) {}

    double operator()(const CMatrix& param) const {
        const CMatrix tg = main_.dual_analysis(param);
        double value = std::pow(main_.average(tg), main_.spec().p);
        for (std::size_t j = 0; j < lower_.size(); ++j) {
            const double excess = lower_[j]->average(tg) - lower_limits_[j];
            if (excess > 0.0) value += 1e6 * excess * excess;
        }
        return value;
    }

    bool smooth_frobenius() const {
        return lower_.empty() && main_.spec().measure == Measure::frobenius;
    }

    CMatrix gradient(const CMatrix& param) const {
        if (smooth_frobenius()) return main_.frobenius_power_gradient(param);
        return finite_difference_gradient(param);
    }

    CMatrix finite_difference_gradient(const CMatrix& param) const {
        const double h = 1e-6 * (1.0 + param.frobenius_norm());
        CMatrix grad(param.rows(), param.cols());
        CMatrix probe = param;
        for (std::size_t i = 0; i < param.rows(); ++i)
            for (std::size_t j = 0; j < param.cols(); ++j) {
                probe(i, j) = param(i, j) + h;
                const double fpr = (*this)(probe);
                probe(i, j) = param(i, j) - h;
                const double fmr = (*this)(probe);
                probe(i, j) = param(i, j) + cxd{0.0, h};
                const double fpi = (*this)(probe);
                probe(i, j) = param(i, j) - cxd{0.0, h};
                const double fmi = (*this)(probe);
                probe(i, j) = param(i, j);
                grad(i, j) = 0.5 * cxd{(fpr - fmr) / (2.0 * h), (fpi - fmi) / (2.0 * h)};
            }
        return grad;
    }

    double average(const CMatrix& param) const { return main_.average_at(param); }

private:
    const Objective& main_;
    std::vector<const Objective*> lower_;
    std::vector<double> lower_limits_;
};

DescentOutcome descend(const PenalizedObjective& objective, CMatrix start,
                       const OptimizeConfig& config, RandomSource& rng) {
    DescentOutcome out{std::move(start), 0.0, 0.0, 0.0, Certificate::budget_exhausted, {}};
    double value = objective(out.param);
    out.trace.push_back({0, objective.average(out.param), 0.0});
    if (out.param.rows() == 0) {
        out.certificate = Certificate::stationary_point;
        out.power_value = value;
        out.average = objective.average(out.param);
        return out;
    }
    double step = config.step_init;
    const bool smooth = objective.smooth_frobenius();
    std::size_t iter = 1;
    for (; iter <= config.max_iters; ++iter) {
        CMatrix grad = objective.gradient(out.param);
        out.grad_norm = grad.frobenius_norm();
        bool stalled = out.grad_norm <= config.grad_tol;
        if (!stalled) {
            // Armijo backtracking along -grad
            const double slope = 2.0 * out.grad_norm * out.grad_norm;
            double s = step;
            bool accepted = false;
            for (int halving = 0; halving < 45; ++halving) {
                CMatrix candidate = out.param;
                candidate += grad * cxd{-s, 0.0};
                const double candidate_value = objective(candidate);
                if (candidate_value <= value - 1e-4 * s * slope) {
                    out.param = std::move(candidate);
                    value = candidate_value;
                    step = std::min(2.0 * s, 1e3);
                    accepted = true;
                    break;
                }
                s *= 0.5;
            }
            out.trace.push_back({iter, objective.average(out.param), accepted ? step : 0.0});
            if (!accepted) stalled = true;
        }
        if (stalled) {
            if (!smooth) {
                // nonsmooth objective: accept stationarity only if random
                // probes at radius 1e-4 cannot improve
                bool improved = false;
                for (int probe = 0; probe < 10 && !improved; ++probe) {
                    CMatrix direction(out.param.rows(), out.param.cols());
                    for (std::size_t i = 0; i < direction.rows(); ++i)
                        for (std::size_t j = 0; j < direction.cols(); ++j)
                            direction(i, j) = rng.complex_normal();
                    const double norm = direction.frobenius_norm();
                    if (norm == 0.0) continue;
                    direction *= cxd{1e-4 / norm, 0.0};
                    CMatrix candidate = out.param;
                    candidate += direction;
                    const double candidate_value = objective(candidate);
                    if (candidate_value < value - 1e-10) {
                        out.param = std::move(candidate);
                        value = candidate_value;
                        improved = true;
                    }
                }
                if (improved) continue;
            }
            out.certificate = Certificate::stationary_point;
            break;
        }
    }
    if (iter > config.max_iters) out.certificate = Certificate::budget_exhausted;
    out.power_value = value;
    out.average = objective.average(out.param);
    return out;
}

}  // namespace

OptimizeResult optimize_gradient(const DualChart& chart, const OptimizeConfig& config) {
    Objective main(chart, config.spec, config.pattern_cap);

    // nested mode: pin the admissible set with the optima of all lower levels
    std::vector<Objective> lower_objectives;
    std::vector<double> lower_limits;
    if (config.nested_optimal && config.spec.erasures > 1) {
        for (std::size_t level = 1; level < config.spec.erasures; ++level) {
            AverageErrorSpec level_spec = config.spec;
            level_spec.erasures = level;
            lower_objectives.emplace_back(chart, level_spec, config.pattern_cap);
        }
        for (std::size_t j = 0; j < lower_objectives.size(); ++j) {
            std::vector<const Objective*> prior;
            for (std::size_t k = 0; k < j; ++k) prior.push_back(&lower_objectives[k]);
            std::vector<double> prior_limits(lower_limits.begin(), lower_limits.begin() + j);
            PenalizedObjective stage(lower_objectives[j], prior, prior_limits);
            RandomSource rng(config.seed + 0x9e3779b97f4a7c15ull * (j + 1));
            DescentOutcome best = descend(stage, zero_parameter(chart), config, rng);
            for (std::size_t r = 1; r <= config.restarts; ++r) {
                DescentOutcome attempt = descend(
                    stage, random_parameter(chart, rng, config.restart_radius), config, rng);
                if (attempt.power_value < best.power_value) best = std::move(attempt);
            }
            lower_limits.push_back(lower_objectives[j].average_at(best.param) + 1e-9);
        }
    }
    std::vector<const Objective*> lower_ptrs;
    for (const Objective& o : lower_objectives) lower_ptrs.push_back(&o);
    PenalizedObjective objective(main, lower_ptrs, lower_limits);

    RandomSource rng(config.seed);
    DescentOutcome best = descend(objective, zero_parameter(chart), config, rng);
    for (std::size_t r = 1; r <= config.restarts; ++r) {
        DescentOutcome attempt =
            descend(objective, random_parameter(chart, rng, config.restart_radius), config, rng);
        const bool better =
            attempt.power_value < best.power_value - 1e-12 ||
            (std::abs(attempt.power_value - best.power_value) <= 1e-12 &&
             attempt.param.frobenius_norm() < best.param.frobenius_norm());
        if (better) best = std::move(attempt);
    }

    DualPair pair = dual_from_parameter(chart, best.param);
    const ErrorReport report = average_error(pair, config.spec, config.pattern_cap, false);
    Certificate certificate = best.certificate;
    if (config.spec.erasures == 1 &&
        report.average <= frobenius_lower_bound(chart.frame) + 1e-9)
        certificate = Certificate::lower_bound_attained;
    return OptimizeResult{std::move(best.param), std::move(pair),     report.average,
                          certificate,           best.grad_norm,      std::move(best.trace)};
}

double average_power_objective(const DualChart& chart, const AverageErrorSpec& spec,
                               const CMatrix& parameter) {
    Objective objective(chart, spec, kDefaultPatternCap);
    return std::pow(objective.average_at(parameter), spec.p);
}

CMatrix frobenius_power_gradient(const DualChart& chart, const AverageErrorSpec& spec,
                                 const CMatrix& parameter) {
    if (spec.measure != Measure::frobenius)
        throw InvalidDimensions("frobenius_power_gradient: frobenius measure only");
    Objective objective(chart, spec, kDefaultPatternCap);
    return objective.frobenius_power_gradient(parameter);
}

OptimizeResult optimize(const DualChart& chart, const OptimizeConfig& config) {
    if (config.method == OptMethod::closed_form) {
        if (config.spec.measure != Measure::frobenius || config.spec.erasures != 1 ||
            config.spec.p != 2.0)
            throw InvalidDimensions(
                "optimize: closed_form is only valid for (frobenius, m = 1, p = 2)");
        return optimize_closed_form_frobenius(chart);
    }
    return optimize_gradient(chart, config);
}

namespace {

SufficiencyReport sufficiency_from_scores(const Frame& frame, const std::vector<double>& scores,
                                          bool require_equal_peak_norms, double tol) {
    SufficiencyReport report;
    report.level = *std::max_element(scores.begin(), scores.end());
    for (std::size_t i = 0; i < scores.size(); ++i) {
        if (scores[i] >= report.level - tol * std::max(1.0, report.level))
            report.peak_set.push_back(i);
        else
            report.rest.push_back(i);
    }
    const auto rows_of = [&](const std::vector<std::size_t>& idx) {
        CMatrix out(idx.size(), frame.dim());
        for (std::size_t r = 0; r < idx.size(); ++r)
            for (std::size_t c = 0; c < frame.dim(); ++c) out(r, c) = frame.vectors()(idx[r], c);
        return out;
    };
    const CMatrix peak_rows = rows_of(report.peak_set);
    const CMatrix rest_rows = rows_of(report.rest);
    const std::size_t rank_peak = numerical_rank(peak_rows);
    const std::size_t rank_rest = numerical_rank(rest_rows);
    CMatrix stacked(frame.count(), frame.dim());
    for (std::size_t r = 0; r < peak_rows.rows(); ++r)
        for (std::size_t c = 0; c < frame.dim(); ++c) stacked(r, c) = peak_rows(r, c);
    for (std::size_t r = 0; r < rest_rows.rows(); ++r)
        for (std::size_t c = 0; c < frame.dim(); ++c)
            stacked(peak_rows.rows() + r, c) = rest_rows(r, c);
    report.subspaces_intersect_trivially =
        rank_peak + rank_rest == numerical_rank(stacked);
    report.rest_linearly_independent = rank_rest == report.rest.size();

    report.peak_norms_equal = true;
    if (require_equal_peak_norms) {
        double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
        for (std::size_t i : report.peak_set) {
            lo = std::min(lo, frame.norm(i));
            hi = std::max(hi, frame.norm(i));
        }
        report.peak_norms_equal = hi == 0.0 || hi - lo <= tol * std::max(1.0, hi);
    }
    report.holds = report.subspaces_intersect_trivially && report.peak_norms_equal &&
                   report.rest_linearly_independent;
    return report;
}

}  // namespace

SufficiencyReport canonical_frobenius_sufficiency(const Frame& frame, double tol) {
    const DualPair canonical = canonical_dual(frame);
    std::vector<double> scores(frame.count());
    for (std::size_t i = 0; i < frame.count(); ++i)
        scores[i] = frame.norm(i) * canonical.dual.norm(i);
    return sufficiency_from_scores(frame, scores, true, tol);
}

SufficiencyReport canonical_spectral_sufficiency(const Frame& frame, double tol) {
    const DualPair canonical = canonical_dual(frame);
    std::vector<double> scores(frame.count());
    for (std::size_t i = 0; i < frame.count(); ++i) {
        // ||S^-1/2 f_i||^2 = <S^-1 f_i, f_i>
        scores[i] = std::sqrt(std::max(inner(canonical.dual, i, canonical.frame, i).real(), 0.0));
    }
    return sufficiency_from_scores(frame, scores, false, tol);
}

ProbeResult uniqueness_probe(const DualChart& chart, const AverageErrorSpec& spec,
                             std::size_t trials, double radius, std::uint64_t seed,
                             std::uint64_t pattern_cap) {
    Objective objective(chart, spec, pattern_cap);
    ProbeResult result;
    result.canonical_value = objective.average_at(zero_parameter(chart));
    result.all_worse = true;
    result.min_excess = std::numeric_limits<double>::infinity();
    if (chart_free_rows(chart) == 0 || trials == 0) {
        result.min_excess = 0.0;
        result.all_worse = chart_free_rows(chart) != 0;
        return result;
    }
    RandomSource rng(seed);
    for (std::size_t t = 0; t < trials; ++t) {
        const CMatrix param = random_parameter(chart, rng, radius);
        const double value = objective.average_at(param);
        const double excess = value - result.canonical_value;
        result.min_excess = std::min(result.min_excess, excess);
        if (!(value > result.canonical_value)) result.all_worse = false;
    }
    return result;
}

}  // namespace framelab
