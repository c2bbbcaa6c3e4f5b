#pragma once

// Dense complex eigenvalue and factorization routines for desk-scale
// matrices. Robustness over speed throughout: explicit Householder
// transforms, generous iteration budgets, no balancing tricks.

#include <vector>

#include "framelab/cmatrix.hpp"

namespace framelab {

// All eigenvalues of a Hermitian matrix, ascending. Householder reduction to
// real symmetric tridiagonal form, then implicit-shift QL iteration.
// Throws NotHermitian when ||A - A*||_F > tol * ||A||_F, NoConvergence past
// the iteration budget (100 * dim sweeps).
std::vector<double> hermitian_eigenvalues(const CMatrix& a, double tol = 1e-10);

// All eigenvalues of a general square matrix, with algebraic multiplicity,
// in no particular order. Householder reduction to Hessenberg form followed
// by Wilkinson-shifted QR with deflation.
std::vector<cxd> general_eigenvalues(const CMatrix& a, double tol = 1e-10);

// Full Hermitian eigensystem via cyclic complex Jacobi. Independent of the
// tridiagonal path above; used where eigenvectors are needed (pseudo-inverse,
// null spaces) and as a cross-check in tests.
struct HermitianEigenSystem {
    std::vector<double> values;  // ascending
    CMatrix vectors;             // unitary, column j pairs with values[j]
};
HermitianEigenSystem hermitian_eigensystem(const CMatrix& a, double tol = 1e-8);

// Singular values, descending (square roots of Gram eigenvalues).
std::vector<double> singular_values(const CMatrix& a);

std::size_t numerical_rank(const CMatrix& a, double tol = 1e-10);

// Orthonormal basis of range(A)^perp for an N x n matrix, N >= n. The
// numerical rank r counts singular values above tol * sigma_max; the result
// has N - r orthonormal columns. Deterministic: fixed pivoting order and
// each column's first significant entry made real positive.
CMatrix orthonormal_complement_basis(const CMatrix& a, double tol = 1e-10);

// Orthonormal basis of null(A) for a matrix of any shape (Gram route).
CMatrix null_space_basis(const CMatrix& a, double tol = 1e-10);

// Solve A X = B for Hermitian positive definite A (Cholesky).
// Throws SingularFrameOperator when a pivot collapses.
CMatrix hermitian_solve_spd(const CMatrix& a, const CMatrix& b);

// Pseudo-inverse of a Hermitian matrix; eigenvalues of magnitude at most
// tol * max|eigenvalue| are treated as zero.
CMatrix hermitian_pinv(const CMatrix& a, double tol = 1e-12);

// max |eigenvalue|
double spectral_radius_of(const CMatrix& a);

// Numerical radius via the rotated-Hermitian-part characterization:
// max over theta of lambda_max((e^{i theta} A + e^{-i theta} A*) / 2),
// seeded on a 64-point grid and refined by golden section to 1e-10.
double numerical_radius_of(const CMatrix& a);

}  // namespace framelab
