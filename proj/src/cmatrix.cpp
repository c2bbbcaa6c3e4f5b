#include "framelab/cmatrix.hpp"

#include <algorithm>
#include <cmath>

#include "framelab/errors.hpp"
#include "framelab/kernels.hpp"

namespace framelab {

CMatrix CMatrix::identity(std::size_t n) {
    CMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i) out(i, i) = 1.0;
    return out;
}

CMatrix CMatrix::adjoint() const {
    CMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            out(j, i) = std::conj((*this)(i, j));
    return out;
}

CMatrix CMatrix::transpose() const {
    CMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    return out;
}

CMatrix CMatrix::conjugate() const {
    CMatrix out(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = std::conj(data_[i]);
    return out;
}

cxd CMatrix::trace() const {
    cxd out{0.0, 0.0};
    const std::size_t n = std::min(rows_, cols_);
    for (std::size_t i = 0; i < n; ++i) out += (*this)(i, i);
    return out;
}

double CMatrix::frobenius_norm() const {
    return std::sqrt(kernels::norm2_sq(data_.data(), data_.size()));
}

double CMatrix::max_abs() const {
    double out = 0.0;
    for (const cxd& z : data_) out = std::max(out, std::abs(z));
    return out;
}

bool CMatrix::all_finite() const {
    for (const cxd& z : data_)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

CMatrix& CMatrix::operator+=(const CMatrix& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw DimensionMismatch("matrix addition: shape mismatch");
    kernels::axpy(cxd{1.0, 0.0}, other.data_.data(), data_.data(), data_.size());
    return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw DimensionMismatch("matrix subtraction: shape mismatch");
    kernels::axpy(cxd{-1.0, 0.0}, other.data_.data(), data_.data(), data_.size());
    return *this;
}

CMatrix& CMatrix::operator*=(cxd a) {
    kernels::scale(a, data_.data(), data_.size());
    return *this;
}

CMatrix CMatrix::operator*(const CMatrix& other) const {
    if (cols_ != other.rows_)
        throw DimensionMismatch("matrix product: inner dimensions differ");
    CMatrix out(rows_, other.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        cxd* dst = out.row(i);
        for (std::size_t l = 0; l < cols_; ++l) {
            const cxd a = (*this)(i, l);
            if (a == cxd{0.0, 0.0}) continue;
            kernels::axpy(a, other.row(l), dst, other.cols_);
        }
    }
    return out;
}

CMatrix adjoint_times(const CMatrix& a, const CMatrix& b) {
    if (a.rows() != b.rows())
        throw DimensionMismatch("adjoint product: row counts differ");
    CMatrix out(a.cols(), b.cols());
    for (std::size_t l = 0; l < a.rows(); ++l) {
        const cxd* arow = a.row(l);
        const cxd* brow = b.row(l);
        for (std::size_t i = 0; i < a.cols(); ++i)
            kernels::axpy(std::conj(arow[i]), brow, out.row(i), b.cols());
    }
    return out;
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionMismatch("max_abs_diff: shape mismatch");
    double out = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            out = std::max(out, std::abs(a(i, j) - b(i, j)));
    return out;
}

}  // namespace framelab
