#pragma once

// Affine coordinates for the set of all duals of a fixed frame: every dual
// has analysis matrix base + P * B, where P has orthonormal columns spanning
// range(T_F)^perp and B is a free (N-n) x n complex parameter.

#include "framelab/cmatrix.hpp"
#include "framelab/frame.hpp"

namespace framelab {

struct DualChart {
    Frame frame;
    CMatrix base;        // canonical dual analysis matrix, N x n
    CMatrix complement;  // P, N x (N-n), orthonormal columns perpendicular to range(T_F)
};

DualChart make_chart(const Frame& frame);

inline std::size_t chart_free_rows(const DualChart& chart) {
    return chart.frame.count() - chart.frame.dim();
}

// Zero parameter of the right shape ((N-n) x n).
CMatrix zero_parameter(const DualChart& chart);

// Maps a parameter to the corresponding dual pair; every parameter yields a
// valid dual. Throws DimensionMismatch on shape mismatch.
DualPair dual_from_parameter(const DualChart& chart, const CMatrix& parameter);

// Inverse chart: recovers B for a dual frame G of chart.frame; throws
// NotADual when G fails the reconstruction identity at duality_tol.
CMatrix parameter_from_dual(const DualChart& chart, const Frame& dual);

}  // namespace framelab
