#pragma once

// Dense complex matrix, row-major, backed by the kernel layer. Sized for
// desk-scale problems (tens of rows/columns); everything is by value.

#include <complex>
#include <cstddef>
#include <vector>

namespace framelab {

using cxd = std::complex<double>;

class CMatrix {
public:
    CMatrix() : rows_(0), cols_(0) {}
    CMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, cxd{0.0, 0.0}) {}

    static CMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return data_.size(); }

    cxd& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const cxd& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    cxd* row(std::size_t i) { return data_.data() + i * cols_; }
    const cxd* row(std::size_t i) const { return data_.data() + i * cols_; }

    cxd* data() { return data_.data(); }
    const cxd* data() const { return data_.data(); }

    CMatrix adjoint() const;
    CMatrix transpose() const;
    CMatrix conjugate() const;

    cxd trace() const;
    double frobenius_norm() const;
    double max_abs() const;
    bool all_finite() const;

    CMatrix& operator+=(const CMatrix& other);
    CMatrix& operator-=(const CMatrix& other);
    CMatrix& operator*=(cxd a);

    friend CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
    friend CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
    friend CMatrix operator*(CMatrix a, cxd s) { return a *= s; }
    friend CMatrix operator*(cxd s, CMatrix a) { return a *= s; }

    // this * other
    CMatrix operator*(const CMatrix& other) const;

private:
    std::size_t rows_, cols_;
    std::vector<cxd> data_;
};

// adjoint(a) * b without materializing the adjoint
CMatrix adjoint_times(const CMatrix& a, const CMatrix& b);

// max |a(i,j) - b(i,j)|
double max_abs_diff(const CMatrix& a, const CMatrix& b);

}  // namespace framelab
