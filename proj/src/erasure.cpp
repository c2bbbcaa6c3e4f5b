#include "framelab/erasure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "framelab/eigen.hpp"
#include "framelab/errors.hpp"
#include "framelab/kernels.hpp"

namespace framelab {

std::string measure_name(Measure m) {
    switch (m) {
        case Measure::frobenius: return "frobenius";
        case Measure::spectral_radius: return "spectral_radius";
        case Measure::numerical_radius: return "numerical_radius";
    }
    return "?";
}

void ErasurePattern::validate(std::size_t count) const {
    if (indices.empty() || indices.size() > count)
        throw InvalidDimensions("erasure pattern: needs 1 <= m <= N");
    for (std::size_t k = 0; k < indices.size(); ++k) {
        if (indices[k] >= count)
            throw InvalidDimensions("erasure pattern: index out of range");
        if (k > 0 && indices[k] <= indices[k - 1])
            throw InvalidDimensions("erasure pattern: indices must be strictly increasing");
    }
}

std::uint64_t pattern_count(std::size_t count, std::size_t erasures) {
    if (erasures > count) return 0;
    erasures = std::min(erasures, count - erasures);
    unsigned __int128 c = 1;
    for (std::size_t k = 1; k <= erasures; ++k) {
        c = c * (count - erasures + k) / k;
        if (c > std::numeric_limits<std::uint64_t>::max())
            return std::numeric_limits<std::uint64_t>::max();
    }
    return static_cast<std::uint64_t>(c);
}

CMatrix error_operator(const DualPair& pair, const ErasurePattern& pattern) {
    pattern.validate(pair.frame.count());
    const std::size_t dim = pair.frame.dim();
    CMatrix e(dim, dim);
    std::vector<cxd> conj_f(dim);
    for (std::size_t i : pattern.indices) {
        const cxd* f = pair.frame.vec(i);
        const cxd* g = pair.dual.vec(i);
        for (std::size_t k = 0; k < dim; ++k) conj_f[k] = std::conj(f[k]);
        for (std::size_t a = 0; a < dim; ++a)
            kernels::axpy(g[a], conj_f.data(), e.row(a), dim);
    }
    return e;
}

namespace {

// value^2 of the Frobenius closed form: sum over the pattern of
// <g_j, g_k><f_k, f_j>.
double frobenius_sq_from_gram(const CMatrix& cross, const ErasurePattern& pattern) {
    double acc = 0.0;
    for (std::size_t j : pattern.indices)
        for (std::size_t k : pattern.indices) acc += (cross(j, k)).real();
    return std::max(acc, 0.0);
}

// cross(j, k) = <g_j, g_k> * <f_k, f_j>
CMatrix cross_gram(const DualPair& pair) {
    const std::size_t count = pair.frame.count();
    CMatrix out(count, count);
    for (std::size_t j = 0; j < count; ++j)
        for (std::size_t k = 0; k < count; ++k)
            out(j, k) = inner(pair.dual, j, pair.dual, k) * inner(pair.frame, k, pair.frame, j);
    return out;
}

double rank_one_spectral(const DualPair& pair, std::size_t i) {
    return std::abs(inner(pair.frame, i, pair.dual, i));
}

double rank_one_numerical(const DualPair& pair, std::size_t i) {
    return 0.5 * (std::abs(inner(pair.frame, i, pair.dual, i)) +
                  pair.frame.norm(i) * pair.dual.norm(i));
}

}  // namespace

double measure_frobenius(const DualPair& pair, const ErasurePattern& pattern) {
    pattern.validate(pair.frame.count());
    if (pattern.erasures() == 1) {
        const std::size_t i = pattern.indices[0];
        return pair.frame.norm(i) * pair.dual.norm(i);
    }
    double acc = 0.0;
    for (std::size_t j : pattern.indices)
        for (std::size_t k : pattern.indices)
            acc += (inner(pair.dual, j, pair.dual, k) * inner(pair.frame, k, pair.frame, j))
                       .real();
    return std::sqrt(std::max(acc, 0.0));
}

double measure_spectral_radius(const DualPair& pair, const ErasurePattern& pattern) {
    pattern.validate(pair.frame.count());
    if (pattern.erasures() == 1) return rank_one_spectral(pair, pattern.indices[0]);
    return spectral_radius_of(error_operator(pair, pattern));
}

double measure_numerical_radius(const DualPair& pair, const ErasurePattern& pattern) {
    pattern.validate(pair.frame.count());
    if (pattern.erasures() == 1) return rank_one_numerical(pair, pattern.indices[0]);
    return numerical_radius_of(error_operator(pair, pattern));
}

double evaluate_measure(const DualPair& pair, Measure measure, const ErasurePattern& pattern) {
    switch (measure) {
        case Measure::frobenius: return measure_frobenius(pair, pattern);
        case Measure::spectral_radius: return measure_spectral_radius(pair, pattern);
        case Measure::numerical_radius: return measure_numerical_radius(pair, pattern);
    }
    throw Error("evaluate_measure: unknown measure");
}

ErrorReport average_error(const DualPair& pair, const AverageErrorSpec& spec,
                          std::uint64_t pattern_cap, bool keep_per_pattern) {
    const std::size_t count = pair.frame.count();
    if (spec.erasures < 1 || spec.erasures > count)
        throw InvalidDimensions("average_error: erasure count out of range");
    if (!(spec.p > 1.0))
        throw InvalidDimensions("average_error: exponent p must exceed 1");
    const std::uint64_t total = pattern_count(count, spec.erasures);
    if (total > pattern_cap)
        throw PatternBudgetExceeded("average_error: " + std::to_string(total) +
                                    " patterns exceed the cap of " +
                                    std::to_string(pattern_cap));

    const std::size_t m = spec.erasures;
    const bool use_gram = spec.measure == Measure::frobenius;
    const CMatrix cross = use_gram ? cross_gram(pair) : CMatrix();

    ErrorReport report;
    report.spec = spec;
    if (m == 1) report.lower_bound = frobenius_lower_bound(pair.frame);

    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(total));
    ErasurePattern pattern;
    pattern.indices.resize(m);
    for (std::size_t k = 0; k < m; ++k) pattern.indices[k] = k;
    for (;;) {
        double value;
        if (use_gram)
            value = std::sqrt(frobenius_sq_from_gram(cross, pattern));
        else if (m == 1 && spec.measure == Measure::spectral_radius)
            value = rank_one_spectral(pair, pattern.indices[0]);
        else if (m == 1 && spec.measure == Measure::numerical_radius)
            value = rank_one_numerical(pair, pattern.indices[0]);
        else
            value = evaluate_measure(pair, spec.measure, pattern);
        values.push_back(value);
        if (keep_per_pattern) report.per_pattern.push_back({pattern, value});

        // next pattern in lexicographic order
        std::size_t k = m;
        while (k > 0 && pattern.indices[k - 1] == count - m + (k - 1)) --k;
        if (k == 0) break;
        ++pattern.indices[k - 1];
        for (std::size_t j = k; j < m; ++j) pattern.indices[j] = pattern.indices[j - 1] + 1;
    }

    // lp mean with the largest value factored out to guard overflow at big p
    double vmax = 0.0;
    for (double v : values) vmax = std::max(vmax, v);
    if (vmax == 0.0) {
        report.average = 0.0;
    } else {
        double acc = 0.0;
        for (double v : values) acc += std::pow(v / vmax, spec.p);
        report.average = vmax * std::pow(acc / static_cast<double>(values.size()), 1.0 / spec.p);
    }
    return report;
}

double worst_case_error(const DualPair& pair, Measure measure, std::size_t erasures,
                        std::uint64_t pattern_cap) {
    const std::size_t count = pair.frame.count();
    if (erasures < 1 || erasures > count)
        throw InvalidDimensions("worst_case_error: erasure count out of range");
    if (pattern_count(count, erasures) > pattern_cap)
        throw PatternBudgetExceeded("worst_case_error: pattern budget exceeded");
    ErasurePattern pattern;
    pattern.indices.resize(erasures);
    for (std::size_t k = 0; k < erasures; ++k) pattern.indices[k] = k;
    double worst = 0.0;
    for (;;) {
        worst = std::max(worst, evaluate_measure(pair, measure, pattern));
        std::size_t k = erasures;
        while (k > 0 && pattern.indices[k - 1] == count - erasures + (k - 1)) --k;
        if (k == 0) break;
        ++pattern.indices[k - 1];
        for (std::size_t j = k; j < erasures; ++j)
            pattern.indices[j] = pattern.indices[j - 1] + 1;
    }
    return worst;
}

double frobenius_lower_bound(const Frame& frame) {
    return static_cast<double>(frame.dim()) / static_cast<double>(frame.count());
}

double etf_frobenius_average(const Frame& frame, std::size_t erasures, double tol) {
    if (erasures < 1 || erasures > frame.count())
        throw InvalidDimensions("etf_frobenius_average: erasure count out of range");
    if (!is_equiangular(frame, tol) || !is_tight(frame, tol))
        throw HypothesisViolated(
            "etf_frobenius_average: frame must be equiangular and tight");
    const double n = static_cast<double>(frame.dim());
    const double big_n = static_cast<double>(frame.count());
    const double m = static_cast<double>(erasures);
    const double ratio = n / big_n;
    double value = m * ratio * ratio;
    if (erasures > 1)
        value += m * (m - 1.0) * (n * big_n - n * n) / (big_n * big_n * (big_n - 1.0));
    return std::sqrt(value);
}

}  // namespace framelab
