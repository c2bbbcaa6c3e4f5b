#include "framelab/kernels.hpp"

namespace framelab::kernels {

namespace {

cxd dot_conj_scalar(const cxd* x, const cxd* y, std::size_t len) {
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < len; ++i) {
        const double xr = x[i].real(), xi = x[i].imag();
        const double yr = y[i].real(), yi = y[i].imag();
        re += xr * yr + xi * yi;
        im += xi * yr - xr * yi;
    }
    return {re, im};
}

double norm2_sq_scalar(const cxd* x, std::size_t len) {
    double acc = 0.0;
    for (std::size_t i = 0; i < len; ++i)
        acc += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
    return acc;
}

void axpy_scalar(cxd a, const cxd* x, cxd* y, std::size_t len) {
    const double ar = a.real(), ai = a.imag();
    for (std::size_t i = 0; i < len; ++i) {
        const double xr = x[i].real(), xi = x[i].imag();
        y[i] += cxd{ar * xr - ai * xi, ar * xi + ai * xr};
    }
}

void scale_scalar(cxd a, cxd* x, std::size_t len) {
    const double ar = a.real(), ai = a.imag();
    for (std::size_t i = 0; i < len; ++i) {
        const double xr = x[i].real(), xi = x[i].imag();
        x[i] = cxd{ar * xr - ai * xi, ar * xi + ai * xr};
    }
}

}  // namespace

const Backend& scalar_backend() {
    static const Backend backend{"scalar", dot_conj_scalar, norm2_sq_scalar,
                                 axpy_scalar, scale_scalar};
    return backend;
}

}  // namespace framelab::kernels
