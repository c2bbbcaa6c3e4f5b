#include "framelab/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "framelab/errors.hpp"

namespace framelab {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

cxd unit_phase(cxd z) {
    const double m = std::abs(z);
    return m > 0.0 ? z / m : cxd{1.0, 0.0};
}

void require_square(const CMatrix& a, const char* who) {
    if (a.rows() != a.cols()) throw DimensionMismatch(std::string(who) + ": matrix not square");
}

CMatrix hermitian_part(const CMatrix& a) {
    CMatrix out = a;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            out(i, j) = 0.5 * (a(i, j) + std::conj(a(j, i)));
    return out;
}

double asymmetry(const CMatrix& a) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            acc += std::norm(a(i, j) - std::conj(a(j, i)));
    return std::sqrt(acc);
}

// In-place Householder similarity reduction of a Hermitian matrix to
// tridiagonal form; returns real diagonal and |subdiagonal| (the eigenvalues
// are invariant under the diagonal phase transform that would make the
// subdiagonal real).
void tridiagonalize(CMatrix t, std::vector<double>& diag, std::vector<double>& off) {
    const std::size_t n = t.rows();
    std::vector<cxd> v(n), w(n), u(n);
    for (std::size_t k = 0; k + 2 < n; ++k) {
        double xnorm2 = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) xnorm2 += std::norm(t(i, k));
        const double xnorm = std::sqrt(xnorm2);
        if (xnorm == 0.0) continue;
        const cxd sigma = -unit_phase(t(k + 1, k)) * xnorm;
        double vnorm2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) v[i] = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) v[i] = t(i, k);
        v[k + 1] -= sigma;
        for (std::size_t i = k + 1; i < n; ++i) vnorm2 += std::norm(v[i]);
        if (vnorm2 == 0.0) continue;
        const double beta = 2.0 / vnorm2;
        // left: T -= beta v (v^H T)
        for (std::size_t j = 0; j < n; ++j) {
            cxd acc{0.0, 0.0};
            for (std::size_t i = k + 1; i < n; ++i) acc += std::conj(v[i]) * t(i, j);
            w[j] = acc;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) t(i, j) -= beta * v[i] * w[j];
        // right: T -= beta (T v) v^H
        for (std::size_t i = 0; i < n; ++i) {
            cxd acc{0.0, 0.0};
            for (std::size_t j = k + 1; j < n; ++j) acc += t(i, j) * v[j];
            u[i] = acc;
        }
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) t(i, j) -= beta * u[i] * std::conj(v[j]);
    }
    diag.resize(n);
    off.assign(n > 0 ? n - 1 : 0, 0.0);
    for (std::size_t i = 0; i < n; ++i) diag[i] = t(i, i).real();
    for (std::size_t i = 0; i + 1 < n; ++i) off[i] = std::abs(t(i + 1, i));
}

// Implicit-shift QL iteration on a real symmetric tridiagonal matrix;
// eigenvalues only.
std::vector<double> tridiag_eigenvalues(std::vector<double> d, std::vector<double> e,
                                        double scale, long budget) {
    const long n = static_cast<long>(d.size());
    if (n == 0) return {};
    e.push_back(0.0);
    long total = 0;
    for (long l = 0; l < n; ++l) {
        for (;;) {
            long m = l;
            for (; m < n - 1; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                double thresh = kEps * dd;
                if (thresh == 0.0) thresh = kEps * scale;
                if (std::abs(e[m]) <= thresh) break;
            }
            if (m == l) break;
            if (++total > budget)
                throw NoConvergence("tridiagonal QL: iteration budget exhausted");
            double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            double r = std::hypot(g, 1.0);
            g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
            double s = 1.0, c = 1.0, p = 0.0;
            long i = m - 1;
            bool underflow = false;
            for (; i >= l; --i) {
                double f = s * e[i];
                const double b = c * e[i];
                r = std::hypot(f, g);
                e[i + 1] = r;
                if (r == 0.0) {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if (underflow) continue;
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    std::sort(d.begin(), d.end());
    return d;
}

// Householder reduction to upper Hessenberg form (similarity).
CMatrix hessenberg(CMatrix h) {
    const std::size_t n = h.rows();
    std::vector<cxd> v(n), w(n), u(n);
    for (std::size_t k = 0; k + 2 < n; ++k) {
        double xnorm2 = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) xnorm2 += std::norm(h(i, k));
        const double xnorm = std::sqrt(xnorm2);
        if (xnorm == 0.0) continue;
        const cxd sigma = -unit_phase(h(k + 1, k)) * xnorm;
        for (std::size_t i = 0; i < n; ++i) v[i] = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) v[i] = h(i, k);
        v[k + 1] -= sigma;
        double vnorm2 = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) vnorm2 += std::norm(v[i]);
        if (vnorm2 == 0.0) continue;
        const double beta = 2.0 / vnorm2;
        for (std::size_t j = 0; j < n; ++j) {
            cxd acc{0.0, 0.0};
            for (std::size_t i = k + 1; i < n; ++i) acc += std::conj(v[i]) * h(i, j);
            w[j] = acc;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) h(i, j) -= beta * v[i] * w[j];
        for (std::size_t i = 0; i < n; ++i) {
            cxd acc{0.0, 0.0};
            for (std::size_t j = k + 1; j < n; ++j) acc += h(i, j) * v[j];
            u[i] = acc;
        }
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) h(i, j) -= beta * u[i] * std::conj(v[j]);
    }
    return h;
}

void eigen_2x2(cxd a, cxd b, cxd c, cxd d, cxd& l1, cxd& l2) {
    const cxd mean = 0.5 * (a + d);
    const cxd disc = std::sqrt(0.25 * (a - d) * (a - d) + b * c);
    l1 = mean + disc;
    l2 = mean - disc;
}

cxd wilkinson_shift(cxd a, cxd b, cxd c, cxd d) {
    cxd l1, l2;
    eigen_2x2(a, b, c, d, l1, l2);
    return std::abs(l1 - d) <= std::abs(l2 - d) ? l1 : l2;
}

// Complex Givens rotation [c, s; -conj(s), c] (c real) zeroing g in (f, g).
void make_givens(cxd f, cxd g, double& c, cxd& s) {
    const double af = std::abs(f), ag = std::abs(g);
    const double denom = std::hypot(af, ag);
    if (denom == 0.0 || ag == 0.0) {
        c = 1.0;
        s = 0.0;
        return;
    }
    if (af == 0.0) {
        c = 0.0;
        s = std::conj(g) / ag;
        return;
    }
    c = af / denom;
    s = (f / af) * std::conj(g) / denom;
}

// One explicit shifted QR sweep on the active Hessenberg block [lo, hi].
void qr_sweep(CMatrix& h, std::size_t lo, std::size_t hi, cxd shift) {
    for (std::size_t k = lo; k <= hi; ++k) h(k, k) -= shift;
    const std::size_t nrot = hi - lo;
    std::vector<double> cs(nrot);
    std::vector<cxd> ss(nrot);
    for (std::size_t k = lo; k < hi; ++k) {
        double c;
        cxd s;
        make_givens(h(k, k), h(k + 1, k), c, s);
        cs[k - lo] = c;
        ss[k - lo] = s;
        for (std::size_t j = k; j <= hi; ++j) {
            const cxd top = h(k, j), bot = h(k + 1, j);
            h(k, j) = c * top + s * bot;
            h(k + 1, j) = -std::conj(s) * top + c * bot;
        }
        h(k + 1, k) = 0.0;
    }
    for (std::size_t k = lo; k < hi; ++k) {
        const double c = cs[k - lo];
        const cxd s = ss[k - lo];
        const std::size_t top_row = lo, bot_row = std::min(k + 1, hi);
        for (std::size_t i = top_row; i <= bot_row; ++i) {
            const cxd left = h(i, k), right = h(i, k + 1);
            h(i, k) = c * left + std::conj(s) * right;
            h(i, k + 1) = -s * left + c * right;
        }
    }
    for (std::size_t k = lo; k <= hi; ++k) h(k, k) += shift;
}

}  // namespace

std::vector<double> hermitian_eigenvalues(const CMatrix& a, double tol) {
    require_square(a, "hermitian_eigenvalues");
    if (tol <= 0.0) throw InvalidDimensions("hermitian_eigenvalues: tol must be positive");
    const std::size_t n = a.rows();
    if (n == 0) return {};
    const double norm = a.frobenius_norm();
    if (asymmetry(a) > tol * std::max(norm, 1e-300))
        throw NotHermitian("hermitian_eigenvalues: matrix fails the symmetry check");
    if (norm == 0.0) return std::vector<double>(n, 0.0);
    if (n == 1) return {a(0, 0).real()};
    std::vector<double> d, e;
    tridiagonalize(hermitian_part(a), d, e);
    return tridiag_eigenvalues(std::move(d), std::move(e), norm,
                               100 * static_cast<long>(n));
}

std::vector<cxd> general_eigenvalues(const CMatrix& a, double tol) {
    (void)tol;
    require_square(a, "general_eigenvalues");
    const std::size_t n = a.rows();
    if (n == 0) return {};
    const double norm = a.frobenius_norm();
    if (norm == 0.0) return std::vector<cxd>(n, cxd{0.0, 0.0});
    if (n == 1) return {a(0, 0)};

    CMatrix h = hessenberg(a);
    std::vector<cxd> eigs;
    eigs.reserve(n);
    long hi = static_cast<long>(n) - 1;
    long total = 0, block_iters = 0;
    const long budget = 100 * static_cast<long>(n);
    while (hi >= 0) {
        // scan for a negligible subdiagonal entry
        long lo = hi;
        while (lo > 0) {
            double s = std::abs(h(lo - 1, lo - 1)) + std::abs(h(lo, lo));
            if (s == 0.0) s = norm;
            if (std::abs(h(lo, lo - 1)) <= kEps * s) {
                h(lo, lo - 1) = 0.0;
                break;
            }
            --lo;
        }
        if (lo == hi) {
            eigs.push_back(h(hi, hi));
            --hi;
            block_iters = 0;
            continue;
        }
        if (lo == hi - 1) {
            cxd l1, l2;
            eigen_2x2(h(hi - 1, hi - 1), h(hi - 1, hi), h(hi, hi - 1), h(hi, hi), l1, l2);
            eigs.push_back(l1);
            eigs.push_back(l2);
            hi -= 2;
            block_iters = 0;
            continue;
        }
        if (++total > budget)
            throw NoConvergence("general_eigenvalues: QR iteration budget exhausted");
        cxd shift;
        if (++block_iters % 12 == 0) {
            // ad hoc shift to break symmetric stalls
            shift = h(hi, hi) + 0.75 * std::abs(h(hi, hi - 1));
        } else {
            shift = wilkinson_shift(h(hi - 1, hi - 1), h(hi - 1, hi), h(hi, hi - 1), h(hi, hi));
        }
        qr_sweep(h, static_cast<std::size_t>(lo), static_cast<std::size_t>(hi), shift);
    }
    return eigs;
}

HermitianEigenSystem hermitian_eigensystem(const CMatrix& a, double tol) {
    require_square(a, "hermitian_eigensystem");
    const std::size_t n = a.rows();
    const double norm = a.frobenius_norm();
    if (norm > 0.0 && asymmetry(a) > tol * norm)
        throw NotHermitian("hermitian_eigensystem: matrix fails the symmetry check");
    CMatrix m = hermitian_part(a);
    CMatrix v = CMatrix::identity(n);
    if (n == 0 || norm == 0.0)
        return {std::vector<double>(n, 0.0), std::move(v)};

    const double off_target = 1e-15 * norm * static_cast<double>(n);
    const int max_sweeps = 80;
    int sweep = 0;
    for (; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += 2.0 * std::norm(m(p, q));
        if (std::sqrt(off) <= off_target) break;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double beta = std::abs(m(p, q));
                const double app = m(p, p).real(), aqq = m(q, q).real();
                if (beta <= kEps * (std::abs(app) + std::abs(aqq)) || beta == 0.0) continue;
                const cxd phase = m(p, q) / beta;
                const double tau = (aqq - app) / (2.0 * beta);
                double t;
                if (tau == 0.0)
                    t = 1.0;
                else
                    t = (tau > 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const cxd s = (t * c) * phase;
                // rows p, q of U* M
                for (std::size_t j = 0; j < n; ++j) {
                    const cxd mp = m(p, j), mq = m(q, j);
                    m(p, j) = c * mp - s * mq;
                    m(q, j) = std::conj(s) * mp + c * mq;
                }
                // columns p, q of (U* M) U
                for (std::size_t i = 0; i < n; ++i) {
                    const cxd mp = m(i, p), mq = m(i, q);
                    m(i, p) = c * mp - std::conj(s) * mq;
                    m(i, q) = s * mp + c * mq;
                    const cxd vp = v(i, p), vq = v(i, q);
                    v(i, p) = c * vp - std::conj(s) * vq;
                    v(i, q) = s * vp + c * vq;
                }
                m(p, q) = 0.0;
                m(q, p) = 0.0;
            }
        }
    }
    if (sweep == max_sweeps)
        throw NoConvergence("hermitian_eigensystem: Jacobi sweeps exhausted");

    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t x, std::size_t y) { return m(x, x).real() < m(y, y).real(); });
    HermitianEigenSystem out{std::vector<double>(n), CMatrix(n, n)};
    for (std::size_t j = 0; j < n; ++j) {
        out.values[j] = m(order[j], order[j]).real();
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, j) = v(i, order[j]);
    }
    return out;
}

std::vector<double> singular_values(const CMatrix& a) {
    const bool tall = a.rows() >= a.cols();
    const CMatrix gram = tall ? adjoint_times(a, a) : adjoint_times(a.adjoint(), a.adjoint());
    std::vector<double> evals = hermitian_eigenvalues(gram, 1e-6);
    std::vector<double> out(evals.size());
    for (std::size_t i = 0; i < evals.size(); ++i)
        out[i] = std::sqrt(std::max(evals[evals.size() - 1 - i], 0.0));
    return out;
}

namespace {

// Make the first significant entry of each column real positive.
void fix_column_phases(CMatrix& p) {
    for (std::size_t j = 0; j < p.cols(); ++j) {
        double colmax = 0.0;
        for (std::size_t i = 0; i < p.rows(); ++i) colmax = std::max(colmax, std::abs(p(i, j)));
        if (colmax == 0.0) continue;
        std::size_t lead = 0;
        while (lead < p.rows() && std::abs(p(lead, j)) <= 1e-8 * colmax) ++lead;
        if (lead == p.rows()) continue;
        const cxd factor = std::conj(unit_phase(p(lead, j)));
        for (std::size_t i = 0; i < p.rows(); ++i) p(i, j) *= factor;
    }
}

// Householder QR with column pivoting. Pivot column norms are the rank
// proxies: the factorization stops once the largest trailing norm falls to
// tol times the first pivot norm. Unlike the Gram route this resolves rank
// drops all the way down to machine precision.
struct PivotedQr {
    CMatrix q;                       // rows x rows unitary (if requested)
    CMatrix r;                       // rows x cols, column-permuted triangular factor
    std::vector<std::size_t> perm;   // r column k came from input column perm[k]
    std::size_t rank = 0;
};

PivotedQr pivoted_qr(const CMatrix& a, double tol, bool want_q) {
    const std::size_t nrows = a.rows(), ncols = a.cols();
    PivotedQr out;
    out.r = a;
    if (want_q) out.q = CMatrix::identity(nrows);
    out.perm.resize(ncols);
    for (std::size_t j = 0; j < ncols; ++j) out.perm[j] = j;

    std::vector<cxd> v(nrows), w(std::max(nrows, ncols) + 1);
    double first_norm = 0.0;
    CMatrix& r = out.r;
    for (std::size_t k = 0; k < std::min(nrows, ncols); ++k) {
        std::size_t piv = k;
        double best = -1.0;
        for (std::size_t j = k; j < ncols; ++j) {
            double norm2 = 0.0;
            for (std::size_t i = k; i < nrows; ++i) norm2 += std::norm(r(i, j));
            if (norm2 > best) {
                best = norm2;
                piv = j;
            }
        }
        const double xnorm = std::sqrt(std::max(best, 0.0));
        if (k == 0) first_norm = xnorm;
        if (xnorm <= tol * first_norm) break;  // remaining columns count as zero
        out.rank = k + 1;
        if (piv != k) {
            for (std::size_t i = 0; i < nrows; ++i) std::swap(r(i, k), r(i, piv));
            std::swap(out.perm[k], out.perm[piv]);
        }
        const cxd sigma = -unit_phase(r(k, k)) * xnorm;
        for (std::size_t i = 0; i < nrows; ++i) v[i] = 0.0;
        for (std::size_t i = k; i < nrows; ++i) v[i] = r(i, k);
        v[k] -= sigma;
        double vnorm2 = 0.0;
        for (std::size_t i = k; i < nrows; ++i) vnorm2 += std::norm(v[i]);
        if (vnorm2 == 0.0) continue;
        const double beta = 2.0 / vnorm2;
        // R <- H R
        for (std::size_t j = k; j < ncols; ++j) {
            cxd acc{0.0, 0.0};
            for (std::size_t i = k; i < nrows; ++i) acc += std::conj(v[i]) * r(i, j);
            w[j] = beta * acc;
        }
        for (std::size_t i = k; i < nrows; ++i)
            for (std::size_t j = k; j < ncols; ++j) r(i, j) -= v[i] * w[j];
        r(k, k) = sigma;
        for (std::size_t i = k + 1; i < nrows; ++i) r(i, k) = 0.0;
        if (want_q) {
            // Q <- Q H
            for (std::size_t i = 0; i < nrows; ++i) {
                cxd acc{0.0, 0.0};
                for (std::size_t j = k; j < nrows; ++j) acc += out.q(i, j) * v[j];
                w[i] = beta * acc;
            }
            for (std::size_t i = 0; i < nrows; ++i)
                for (std::size_t j = k; j < nrows; ++j) out.q(i, j) -= w[i] * std::conj(v[j]);
        }
    }
    return out;
}

}  // namespace

std::size_t numerical_rank(const CMatrix& a, double tol) {
    if (a.rows() == 0 || a.cols() == 0) return 0;
    return pivoted_qr(a, tol, false).rank;
}

CMatrix orthonormal_complement_basis(const CMatrix& a, double tol) {
    const std::size_t nrows = a.rows(), ncols = a.cols();
    if (nrows < ncols)
        throw DimensionMismatch("orthonormal_complement_basis: needs rows >= cols");
    const PivotedQr qr = pivoted_qr(a, tol, true);
    CMatrix p(nrows, nrows - qr.rank);
    for (std::size_t j = qr.rank; j < nrows; ++j)
        for (std::size_t i = 0; i < nrows; ++i) p(i, j - qr.rank) = qr.q(i, j);
    fix_column_phases(p);
    return p;
}

CMatrix null_space_basis(const CMatrix& a, double tol) {
    const std::size_t dim = a.cols();
    if (dim == 0) return CMatrix(0, 0);
    if (a.rows() == 0) {
        CMatrix p = CMatrix::identity(dim);
        return p;
    }
    // null(A) = perm . null(R) for A P = Q R; R's trapezoidal top block is
    // rank x dim, so null(R) is the complement of range(R^H)
    const PivotedQr qr = pivoted_qr(a, tol, false);
    CMatrix top(qr.rank, dim);
    for (std::size_t i = 0; i < qr.rank; ++i)
        for (std::size_t j = 0; j < dim; ++j) top(i, j) = qr.r(i, j);
    const CMatrix null_r = orthonormal_complement_basis(top.adjoint(), tol);
    CMatrix p(dim, null_r.cols());
    for (std::size_t k = 0; k < dim; ++k)
        for (std::size_t j = 0; j < null_r.cols(); ++j) p(qr.perm[k], j) = null_r(k, j);
    fix_column_phases(p);
    return p;
}

CMatrix hermitian_solve_spd(const CMatrix& a, const CMatrix& b) {
    require_square(a, "hermitian_solve_spd");
    const std::size_t n = a.rows();
    if (b.rows() != n) throw DimensionMismatch("hermitian_solve_spd: rhs shape mismatch");
    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) scale = std::max(scale, std::abs(a(i, i)));
    CMatrix l(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        double diag = a(j, j).real();
        for (std::size_t k = 0; k < j; ++k) diag -= std::norm(l(j, k));
        if (!(diag > kEps * kEps * scale))
            throw SingularFrameOperator("cholesky: matrix is not positive definite");
        const double ljj = std::sqrt(diag);
        l(j, j) = ljj;
        for (std::size_t i = j + 1; i < n; ++i) {
            cxd acc = a(i, j);
            for (std::size_t k = 0; k < j; ++k) acc -= l(i, k) * std::conj(l(j, k));
            l(i, j) = acc / ljj;
        }
    }
    // forward then backward substitution, column by column
    CMatrix x = b;
    for (std::size_t col = 0; col < b.cols(); ++col) {
        for (std::size_t i = 0; i < n; ++i) {
            cxd acc = x(i, col);
            for (std::size_t k = 0; k < i; ++k) acc -= l(i, k) * x(k, col);
            x(i, col) = acc / l(i, i).real();
        }
        for (std::size_t ii = n; ii-- > 0;) {
            cxd acc = x(ii, col);
            for (std::size_t k = ii + 1; k < n; ++k) acc -= std::conj(l(k, ii)) * x(k, col);
            x(ii, col) = acc / l(ii, ii).real();
        }
    }
    return x;
}

CMatrix hermitian_pinv(const CMatrix& a, double tol) {
    const HermitianEigenSystem es = hermitian_eigensystem(a, 1e-6);
    const std::size_t n = a.rows();
    double vmax = 0.0;
    for (double v : es.values) vmax = std::max(vmax, std::abs(v));
    CMatrix scaled = es.vectors;  // columns scaled by 1/lambda where significant
    for (std::size_t j = 0; j < n; ++j) {
        const double lam = es.values[j];
        const cxd factor = (vmax > 0.0 && std::abs(lam) > tol * vmax) ? cxd{1.0 / lam, 0.0}
                                                                      : cxd{0.0, 0.0};
        for (std::size_t i = 0; i < n; ++i) scaled(i, j) *= factor;
    }
    return scaled * es.vectors.adjoint();
}

double spectral_radius_of(const CMatrix& a) {
    double out = 0.0;
    for (const cxd& l : general_eigenvalues(a)) out = std::max(out, std::abs(l));
    return out;
}

namespace {

double rotated_lambda_max(const CMatrix& a, double theta) {
    const cxd phase{std::cos(theta), std::sin(theta)};
    CMatrix h(a.rows(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            h(i, j) = 0.5 * (phase * a(i, j) + std::conj(phase * a(j, i)));
    return hermitian_eigenvalues(h, 1e-6).back();
}

}  // namespace

double numerical_radius_of(const CMatrix& a) {
    require_square(a, "numerical_radius_of");
    if (a.rows() == 0 || a.frobenius_norm() == 0.0) return 0.0;
    constexpr int kSeeds = 64;
    constexpr double kTwoPi = 2.0 * std::numbers::pi;
    double best_val = -std::numeric_limits<double>::infinity();
    double best_theta = 0.0;
    for (int j = 0; j < kSeeds; ++j) {
        const double theta = kTwoPi * j / kSeeds;
        const double val = rotated_lambda_max(a, theta);
        if (val > best_val) {
            best_val = val;
            best_theta = theta;
        }
    }
    // golden-section refinement around the best seed
    const double golden = (std::sqrt(5.0) - 1.0) / 2.0;
    double lo = best_theta - kTwoPi / kSeeds;
    double hi = best_theta + kTwoPi / kSeeds;
    double x1 = hi - golden * (hi - lo);
    double x2 = lo + golden * (hi - lo);
    double f1 = rotated_lambda_max(a, x1);
    double f2 = rotated_lambda_max(a, x2);
    while (hi - lo > 1e-10) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + golden * (hi - lo);
            f2 = rotated_lambda_max(a, x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - golden * (hi - lo);
            f1 = rotated_lambda_max(a, x1);
        }
        best_val = std::max(best_val, std::max(f1, f2));
    }
    return best_val;
}

}  // namespace framelab
