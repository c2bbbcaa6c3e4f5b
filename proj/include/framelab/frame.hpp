#pragma once

// Finite frames for C^n: the Frame type, frame operator, canonical dual,
// structural predicates and the named constructors.

#include <cmath>
#include <cstdint>
#include <vector>

#include "framelab/cmatrix.hpp"

namespace framelab {

inline constexpr double kRankTol = 1e-10;

// A pair (F, G) counts as dual when ||T_G^* T_F - I||_F <= duality_tol(n).
inline double duality_tol(std::size_t dim) {
    return 1e-8 * std::sqrt(static_cast<double>(dim));
}

// Ordered spanning family of `count()` vectors in C^dim(), stored as rows.
class Frame {
public:
    // Validates: count >= dim >= 1, finite entries, full rank at rank_tol.
    static Frame from_vectors(CMatrix vectors, double rank_tol = kRankTol);

    std::size_t dim() const { return vectors_.cols(); }    // ambient dimension n
    std::size_t count() const { return vectors_.rows(); }  // number of vectors N

    const CMatrix& vectors() const { return vectors_; }
    const cxd* vec(std::size_t i) const { return vectors_.row(i); }
    double norm_sq(std::size_t i) const;
    double norm(std::size_t i) const { return std::sqrt(norm_sq(i)); }

private:
    explicit Frame(CMatrix v) : vectors_(std::move(v)) {}
    CMatrix vectors_;
};

// <x, y> with the second argument conjugated.
cxd inner(const cxd* x, const cxd* y, std::size_t len);
cxd inner(const Frame& f, std::size_t i, const Frame& g, std::size_t j);

// N x n matrix whose i-th row is conj(f_i), so that row i applied to the
// coordinates of f gives <f, f_i>.
CMatrix analysis_matrix(const Frame& f);

struct FrameOperatorInfo {
    CMatrix op;          // S = T^* T, Hermitian positive definite
    double lower_bound;  // optimal lower frame bound (min eigenvalue)
    double upper_bound;  // optimal upper frame bound (max eigenvalue)
};
FrameOperatorInfo frame_operator(const Frame& f);

struct DualPair {
    Frame frame;
    Frame dual;
};

// ||T_G^* T_F - I||_F
double duality_residual(const Frame& f, const Frame& g);

// Throws NotADual (with the measured residual) past duality_tol.
DualPair make_dual_pair(Frame f, Frame g);

// g_i = S^{-1} f_i
DualPair canonical_dual(const Frame& f);

bool is_tight(const Frame& f, double tol = 1e-10);
bool is_parseval(const Frame& f, double tol = 1e-10);
bool is_uniform(const Frame& f, double tol = 1e-10);
bool is_equiangular(const Frame& f, double tol = 1e-10);

// <f_i, g_i> for all i.
std::vector<cxd> diagonal_inner_products(const DualPair& pair);

// All <f_i, g_i> within tol of n/N.
bool is_one_uniform_dual(const DualPair& pair, double tol = 1e-8);
// Additionally all cross products <f_i, g_j><f_j, g_i> (i != j) mutually
// within tol.
bool is_two_uniform_dual(const DualPair& pair, double tol = 1e-8);

// sum_{i != j} |<f_i, g_j>|^2 - (n - n^2/N). Requires a 1-uniform pair
// (throws NotOneUniform otherwise); the returned gap is nonnegative in exact
// arithmetic.
double one_uniform_cross_gap(const DualPair& pair, double tol = 1e-8);

// Named constructors.
Frame mercedes_benz();  // 3 unit vectors in dim 2 at 90, 210, 330 degrees
Frame simplex_frame(std::size_t dim);  // dim+1 unit vectors, equiangular tight
Frame harmonic_frame(std::size_t count, std::size_t dim);  // Parseval, uniform
Frame random_frame(std::size_t count, std::size_t dim, std::uint64_t seed);

}  // namespace framelab
