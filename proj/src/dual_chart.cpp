#include "framelab/dual_chart.hpp"

#include "framelab/eigen.hpp"
#include "framelab/errors.hpp"

namespace framelab {

DualChart make_chart(const Frame& frame) {
    const CMatrix analysis = analysis_matrix(frame);
    DualPair canonical = canonical_dual(frame);
    CMatrix base = analysis_matrix(canonical.dual);
    CMatrix complement = orthonormal_complement_basis(analysis, kRankTol);
    return {std::move(canonical.frame), std::move(base), std::move(complement)};
}

CMatrix zero_parameter(const DualChart& chart) {
    return CMatrix(chart_free_rows(chart), chart.frame.dim());
}

DualPair dual_from_parameter(const DualChart& chart, const CMatrix& parameter) {
    if (parameter.rows() != chart_free_rows(chart) || parameter.cols() != chart.frame.dim())
        throw DimensionMismatch("dual_from_parameter: parameter shape mismatch");
    CMatrix dual_analysis = chart.base;
    if (parameter.rows() > 0) dual_analysis += chart.complement * parameter;
    return make_dual_pair(chart.frame, Frame::from_vectors(dual_analysis.conjugate()));
}

CMatrix parameter_from_dual(const DualChart& chart, const Frame& dual) {
    const double residual = duality_residual(chart.frame, dual);
    if (!(residual <= duality_tol(chart.frame.dim())))
        throw NotADual("parameter_from_dual: reconstruction identity fails, residual " +
                           std::to_string(residual),
                       residual);
    CMatrix offset = analysis_matrix(dual);
    offset -= chart.base;
    return adjoint_times(chart.complement, offset);
}

}  // namespace framelab
