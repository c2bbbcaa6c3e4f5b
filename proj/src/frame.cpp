#include "framelab/frame.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "framelab/eigen.hpp"
#include "framelab/errors.hpp"
#include "framelab/kernels.hpp"
#include "framelab/rng.hpp"

namespace framelab {

Frame Frame::from_vectors(CMatrix vectors, double rank_tol) {
    const std::size_t count = vectors.rows(), dim = vectors.cols();
    if (dim == 0 || count < dim)
        throw InvalidDimensions("frame: needs count >= dim >= 1");
    if (!vectors.all_finite())
        throw InvalidDimensions("frame: entries must be finite");
    if (numerical_rank(vectors, rank_tol) != dim)
        throw InvalidDimensions("frame: vectors do not span the space");
    return Frame(std::move(vectors));
}

double Frame::norm_sq(std::size_t i) const {
    return kernels::norm2_sq(vectors_.row(i), dim());
}

cxd inner(const cxd* x, const cxd* y, std::size_t len) {
    return kernels::dot_conj(x, y, len);
}

cxd inner(const Frame& f, std::size_t i, const Frame& g, std::size_t j) {
    return inner(f.vec(i), g.vec(j), f.dim());
}

CMatrix analysis_matrix(const Frame& f) { return f.vectors().conjugate(); }

FrameOperatorInfo frame_operator(const Frame& f) {
    const CMatrix a = analysis_matrix(f);
    CMatrix s = adjoint_times(a, a);
    for (std::size_t i = 0; i < s.rows(); ++i)
        for (std::size_t j = i; j < s.cols(); ++j) {
            const cxd v = 0.5 * (s(i, j) + std::conj(s(j, i)));
            s(i, j) = v;
            s(j, i) = std::conj(v);
        }
    const std::vector<double> spectrum = hermitian_eigenvalues(s, 1e-8);
    return {std::move(s), spectrum.front(), spectrum.back()};
}

double duality_residual(const Frame& f, const Frame& g) {
    if (f.dim() != g.dim() || f.count() != g.count())
        throw DimensionMismatch("duality_residual: frames have different shape");
    CMatrix prod = adjoint_times(analysis_matrix(g), analysis_matrix(f));
    prod -= CMatrix::identity(f.dim());
    return prod.frobenius_norm();
}

DualPair make_dual_pair(Frame f, Frame g) {
    const double residual = duality_residual(f, g);
    if (!(residual <= duality_tol(f.dim())))
        throw NotADual("dual pair: reconstruction identity fails, residual " +
                           std::to_string(residual),
                       residual);
    return {std::move(f), std::move(g)};
}

DualPair canonical_dual(const Frame& f) {
    const FrameOperatorInfo info = frame_operator(f);
    // columns of the RHS are the frame vectors; solve S g_i = f_i
    const CMatrix duals = hermitian_solve_spd(info.op, f.vectors().transpose());
    return make_dual_pair(f, Frame::from_vectors(duals.transpose()));
}

bool is_tight(const Frame& f, double tol) {
    const FrameOperatorInfo info = frame_operator(f);
    return info.upper_bound - info.lower_bound <= tol * info.upper_bound;
}

bool is_parseval(const Frame& f, double tol) {
    const FrameOperatorInfo info = frame_operator(f);
    return std::abs(info.lower_bound - 1.0) <= tol && std::abs(info.upper_bound - 1.0) <= tol;
}

bool is_uniform(const Frame& f, double tol) {
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (std::size_t i = 0; i < f.count(); ++i) {
        const double nrm = f.norm(i);
        lo = std::min(lo, nrm);
        hi = std::max(hi, nrm);
    }
    return hi == 0.0 || hi - lo <= tol * hi;
}

bool is_equiangular(const Frame& f, double tol) {
    if (!is_uniform(f, tol)) return false;
    if (f.count() < 2) return true;
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    double scale = 0.0;
    for (std::size_t i = 0; i < f.count(); ++i) scale = std::max(scale, f.norm_sq(i));
    for (std::size_t i = 0; i < f.count(); ++i)
        for (std::size_t j = i + 1; j < f.count(); ++j) {
            const double c = std::abs(inner(f, i, f, j));
            lo = std::min(lo, c);
            hi = std::max(hi, c);
        }
    return hi - lo <= tol * std::max(scale, 1e-300);
}

std::vector<cxd> diagonal_inner_products(const DualPair& pair) {
    std::vector<cxd> out(pair.frame.count());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = inner(pair.frame, i, pair.dual, i);
    return out;
}

bool is_one_uniform_dual(const DualPair& pair, double tol) {
    const double target = static_cast<double>(pair.frame.dim()) /
                          static_cast<double>(pair.frame.count());
    for (const cxd& v : diagonal_inner_products(pair))
        if (std::abs(v - target) > tol) return false;
    return true;
}

bool is_two_uniform_dual(const DualPair& pair, double tol) {
    if (!is_one_uniform_dual(pair, tol)) return false;
    const std::size_t count = pair.frame.count();
    std::vector<cxd> cross;
    cross.reserve(count * (count - 1));
    for (std::size_t i = 0; i < count; ++i)
        for (std::size_t j = 0; j < count; ++j)
            if (i != j)
                cross.push_back(inner(pair.frame, i, pair.dual, j) *
                                inner(pair.frame, j, pair.dual, i));
    for (std::size_t a = 0; a < cross.size(); ++a)
        for (std::size_t b = a + 1; b < cross.size(); ++b)
            if (std::abs(cross[a] - cross[b]) > tol) return false;
    return true;
}

double one_uniform_cross_gap(const DualPair& pair, double tol) {
    if (!is_one_uniform_dual(pair, tol))
        throw NotOneUniform("one_uniform_cross_gap: pair is not 1-uniform");
    const std::size_t count = pair.frame.count();
    const double dim = static_cast<double>(pair.frame.dim());
    double acc = 0.0;
    for (std::size_t i = 0; i < count; ++i)
        for (std::size_t j = 0; j < count; ++j)
            if (i != j) acc += std::norm(inner(pair.frame, i, pair.dual, j));
    return acc - (dim - dim * dim / static_cast<double>(count));
}

Frame mercedes_benz() {
    const double h = std::sqrt(3.0) / 2.0;
    CMatrix v(3, 2);
    v(0, 0) = 0.0;
    v(0, 1) = 1.0;
    v(1, 0) = -h;
    v(1, 1) = -0.5;
    v(2, 0) = h;
    v(2, 1) = -0.5;
    return Frame::from_vectors(std::move(v));
}

Frame simplex_frame(std::size_t dim) {
    if (dim < 1) throw InvalidDimensions("simplex_frame: dim must be >= 1");
    const std::size_t count = dim + 1;
    // vertices of a regular simplex: e_i - centroid in R^{dim+1}, expressed
    // in an orthonormal basis of the all-ones complement, then normalized
    CMatrix ones(count, 1);
    for (std::size_t i = 0; i < count; ++i) ones(i, 0) = 1.0;
    const CMatrix basis = orthonormal_complement_basis(ones);  // count x dim
    const double shift = 1.0 / static_cast<double>(count);
    const double scale = 1.0 / std::sqrt(static_cast<double>(dim) / static_cast<double>(count));
    CMatrix v(count, dim);
    for (std::size_t i = 0; i < count; ++i)
        for (std::size_t k = 0; k < dim; ++k) {
            cxd acc{0.0, 0.0};
            for (std::size_t j = 0; j < count; ++j) {
                const double u = (j == i ? 1.0 : 0.0) - shift;
                acc += u * std::conj(basis(j, k));
            }
            v(i, k) = acc * scale;
        }
    return Frame::from_vectors(std::move(v));
}

Frame harmonic_frame(std::size_t count, std::size_t dim) {
    if (dim < 1 || count < dim)
        throw InvalidDimensions("harmonic_frame: needs count >= dim >= 1");
    const double root = 1.0 / std::sqrt(static_cast<double>(count));
    CMatrix v(count, dim);
    for (std::size_t j = 0; j < count; ++j)
        for (std::size_t k = 0; k < dim; ++k) {
            const double angle = 2.0 * std::numbers::pi *
                                 static_cast<double>(j * k % count) /
                                 static_cast<double>(count);
            v(j, k) = cxd{std::cos(angle) * root, std::sin(angle) * root};
        }
    return Frame::from_vectors(std::move(v));
}

Frame random_frame(std::size_t count, std::size_t dim, std::uint64_t seed) {
    if (dim < 1 || count < dim)
        throw InvalidDimensions("random_frame: needs count >= dim >= 1");
    RandomSource rng(seed);
    for (int attempt = 0; attempt < 64; ++attempt) {
        CMatrix v(count, dim);
        for (std::size_t i = 0; i < count; ++i)
            for (std::size_t k = 0; k < dim; ++k) v(i, k) = rng.complex_normal();
        if (numerical_rank(v, kRankTol) == dim) return Frame::from_vectors(std::move(v));
    }
    throw InvalidDimensions("random_frame: could not draw a spanning set");
}

}  // namespace framelab
