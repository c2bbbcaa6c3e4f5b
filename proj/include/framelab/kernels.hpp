#pragma once

// Complex vector kernels. Scalar reference implementations plus SIMD
// variants selected once at startup; all dense matrix and frame arithmetic
// funnels through these entry points. The active backend can be forced with
// set_active_backend() or the FRAMELAB_KERNELS environment variable
// ("scalar" / "avx2").

#include <complex>
#include <cstddef>
#include <string_view>
#include <vector>

namespace framelab::kernels {

using cxd = std::complex<double>;

struct Backend {
    const char* name;
    // sum_i x[i] * conj(y[i])
    cxd (*dot_conj)(const cxd* x, const cxd* y, std::size_t len);
    // sum_i |x[i]|^2
    double (*norm2_sq)(const cxd* x, std::size_t len);
    // y[i] += a * x[i]
    void (*axpy)(cxd a, const cxd* x, cxd* y, std::size_t len);
    // x[i] *= a
    void (*scale)(cxd a, cxd* x, std::size_t len);
};

const Backend& scalar_backend();

// Backends compiled into this build that the current CPU can execute.
std::vector<const Backend*> available_backends();

const Backend& active_backend();

// Force a backend by name; returns false if it is not available.
bool set_active_backend(std::string_view name);

inline cxd dot_conj(const cxd* x, const cxd* y, std::size_t len) {
    return active_backend().dot_conj(x, y, len);
}
inline double norm2_sq(const cxd* x, std::size_t len) {
    return active_backend().norm2_sq(x, len);
}
inline void axpy(cxd a, const cxd* x, cxd* y, std::size_t len) {
    active_backend().axpy(a, x, y, len);
}
inline void scale(cxd a, cxd* x, std::size_t len) {
    active_backend().scale(a, x, len);
}

}  // namespace framelab::kernels
