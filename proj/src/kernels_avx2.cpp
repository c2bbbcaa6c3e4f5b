// AVX2+FMA variants of the complex vector kernels. Two interleaved
// complex<double> values per 256-bit register; tails fall back to scalar
// loops. This translation unit is only compiled on x86-64 and only entered
// at runtime when the CPU reports AVX2 and FMA support.

#include "framelab/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

namespace framelab::kernels {

namespace {

// [re0, im0, re1, im1] -> [im0, re0, im1, re1]
inline __m256d swap_pairs(__m256d v) { return _mm256_permute_pd(v, 0x5); }

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

// (even-lane sum, odd-lane sum) of v
inline void hsum_even_odd(__m256d v, double& even, double& odd) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    __m128d s = _mm_add_pd(lo, hi);
    even = _mm_cvtsd_f64(s);
    odd = _mm_cvtsd_f64(_mm_unpackhi_pd(s, s));
}

cxd dot_conj_avx2(const cxd* x, const cxd* y, std::size_t len) {
    const double* xp = reinterpret_cast<const double*>(x);
    const double* yp = reinterpret_cast<const double*>(y);
    __m256d acc_same = _mm256_setzero_pd();  // xr*yr, xi*yi lanes
    __m256d acc_cross = _mm256_setzero_pd(); // xr*yi, xi*yr lanes
    std::size_t i = 0;
    for (; i + 2 <= len; i += 2) {
        __m256d xv = _mm256_loadu_pd(xp + 2 * i);
        __m256d yv = _mm256_loadu_pd(yp + 2 * i);
        acc_same = _mm256_fmadd_pd(xv, yv, acc_same);
        acc_cross = _mm256_fmadd_pd(xv, swap_pairs(yv), acc_cross);
    }
    double re = hsum(acc_same);
    double cross_even, cross_odd;
    hsum_even_odd(acc_cross, cross_even, cross_odd);
    double im = cross_odd - cross_even;  // xi*yr - xr*yi
    for (; i < len; ++i) {
        const double xr = x[i].real(), xi = x[i].imag();
        const double yr = y[i].real(), yi = y[i].imag();
        re += xr * yr + xi * yi;
        im += xi * yr - xr * yi;
    }
    return {re, im};
}

double norm2_sq_avx2(const cxd* x, std::size_t len) {
    const double* xp = reinterpret_cast<const double*>(x);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= len; i += 2) {
        __m256d xv = _mm256_loadu_pd(xp + 2 * i);
        acc = _mm256_fmadd_pd(xv, xv, acc);
    }
    double out = hsum(acc);
    for (; i < len; ++i)
        out += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
    return out;
}

void axpy_avx2(cxd a, const cxd* x, cxd* y, std::size_t len) {
    const double* xp = reinterpret_cast<const double*>(x);
    double* yp = reinterpret_cast<double*>(y);
    const __m256d ar = _mm256_set1_pd(a.real());
    const __m256d ai = _mm256_set1_pd(a.imag());
    std::size_t i = 0;
    for (; i + 2 <= len; i += 2) {
        __m256d xv = _mm256_loadu_pd(xp + 2 * i);
        __m256d yv = _mm256_loadu_pd(yp + 2 * i);
        // a*x: even lanes ar*xr - ai*xi, odd lanes ar*xi + ai*xr
        __m256d prod = _mm256_fmaddsub_pd(ar, xv, _mm256_mul_pd(ai, swap_pairs(xv)));
        _mm256_storeu_pd(yp + 2 * i, _mm256_add_pd(yv, prod));
    }
    const double sr = a.real(), si = a.imag();
    for (; i < len; ++i) {
        const double xr = x[i].real(), xi = x[i].imag();
        y[i] += cxd{sr * xr - si * xi, sr * xi + si * xr};
    }
}

void scale_avx2(cxd a, cxd* x, std::size_t len) {
    double* xp = reinterpret_cast<double*>(x);
    const __m256d ar = _mm256_set1_pd(a.real());
    const __m256d ai = _mm256_set1_pd(a.imag());
    std::size_t i = 0;
    for (; i + 2 <= len; i += 2) {
        __m256d xv = _mm256_loadu_pd(xp + 2 * i);
        __m256d prod = _mm256_fmaddsub_pd(ar, xv, _mm256_mul_pd(ai, swap_pairs(xv)));
        _mm256_storeu_pd(xp + 2 * i, prod);
    }
    const double sr = a.real(), si = a.imag();
    for (; i < len; ++i) {
        const double xr = x[i].real(), xi = x[i].imag();
        x[i] = cxd{sr * xr - si * xi, sr * xi + si * xr};
    }
}

}  // namespace

const Backend* avx2_backend_impl() {
    static const Backend backend{"avx2", dot_conj_avx2, norm2_sq_avx2,
                                 axpy_avx2, scale_avx2};
    return &backend;
}

}  // namespace framelab::kernels

#endif  // x86-64
