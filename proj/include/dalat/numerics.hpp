#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "dalat/matrix.hpp"

namespace dalat {
namespace num {

using CD = std::complex<double>;
using CMatrix = Matrix<CD>;

// ---------------------------------------------------------------------------
// Real symmetric eigensolver: Householder tridiagonalization followed by
// implicit-shift QL. Classical formulation, adequate for the few-hundred-row
// matrices this library sees.

namespace detail {

inline double hypot2(double a, double b) { return std::hypot(a, b); }

/// Reduces the symmetric matrix stored row-major in a (n x n) to tridiagonal
/// form. On exit d holds the diagonal, e the subdiagonal (e[0] unused); when
/// vectors are requested, a holds the orthogonal transformation.
inline void tridiagonalize(std::vector<double>& a, int n, std::vector<double>& d,
                           std::vector<double>& e, bool vectors)
{
    auto at = [&](int i, int j) -> double& { return a[static_cast<std::size_t>(i) * n + j]; };

    for (int i = n - 1; i >= 1; --i) {
        int l = i - 1;
        double h = 0.0, scale = 0.0;
        if (l > 0) {
            for (int k = 0; k <= l; ++k) scale += std::fabs(at(i, k));
            if (scale == 0.0) {
                e[i] = at(i, l);
            } else {
                for (int k = 0; k <= l; ++k) {
                    at(i, k) /= scale;
                    h += at(i, k) * at(i, k);
                }
                double f = at(i, l);
                double g = (f >= 0.0) ? -std::sqrt(h) : std::sqrt(h);
                e[i] = scale * g;
                h -= f * g;
                at(i, l) = f - g;
                f = 0.0;
                for (int j = 0; j <= l; ++j) {
                    if (vectors) at(j, i) = at(i, j) / h;
                    g = 0.0;
                    for (int k = 0; k <= j; ++k) g += at(j, k) * at(i, k);
                    for (int k = j + 1; k <= l; ++k) g += at(k, j) * at(i, k);
                    e[j] = g / h;
                    f += e[j] * at(i, j);
                }
                double hh = f / (h + h);
                for (int j = 0; j <= l; ++j) {
                    f = at(i, j);
                    e[j] = g = e[j] - hh * f;
                    for (int k = 0; k <= j; ++k)
                        at(j, k) -= f * e[k] + g * at(i, k);
                }
            }
        } else {
            e[i] = at(i, l);
        }
        d[i] = h;
    }
    d[0] = 0.0;
    e[0] = 0.0;
    for (int i = 0; i < n; ++i) {
        if (vectors) {
            int l = i - 1;
            if (d[i] != 0.0) {
                for (int j = 0; j <= l; ++j) {
                    double g = 0.0;
                    for (int k = 0; k <= l; ++k) g += at(i, k) * at(k, j);
                    for (int k = 0; k <= l; ++k) at(k, j) -= g * at(k, i);
                }
            }
            d[i] = at(i, i);
            at(i, i) = 1.0;
            for (int j = 0; j <= l; ++j) at(j, i) = at(i, j) = 0.0;
        } else {
            d[i] = at(i, i);
        }
    }
}

/// Implicit-shift QL on a tridiagonal (d, e); eigenvectors accumulate into a
/// when present.
inline void ql_implicit(std::vector<double>& d, std::vector<double>& e, int n,
                        std::vector<double>* a)
{
    auto at = [&](int i, int j) -> double& { return (*a)[static_cast<std::size_t>(i) * n + j]; };

    for (int i = 1; i < n; ++i) e[i - 1] = e[i];
    e[n - 1] = 0.0;

    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m;
        do {
            for (m = l; m < n - 1; ++m) {
                double dd = std::fabs(d[m]) + std::fabs(d[m + 1]);
                if (std::fabs(e[m]) <= 2.3e-16 * dd) break;
            }
            if (m != l) {
                if (iter++ == 50)
                    throw std::runtime_error("sym_eigen: QL failed to converge");
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = hypot2(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + (g >= 0 ? r : -r));
                double s = 1.0, c = 1.0, p = 0.0;
                int i = m - 1;
                bool underflow = false;
                for (; i >= l; --i) {
                    double f = s * e[i];
                    double b = c * e[i];
                    r = hypot2(f, g);
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
                    if (a) {
                        for (int k = 0; k < n; ++k) {
                            f = at(k, i + 1);
                            at(k, i + 1) = s * at(k, i) + c * f;
                            at(k, i) = c * at(k, i) - s * f;
                        }
                    }
                }
                if (underflow && i >= l) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
}

} // namespace detail

struct SymEigen {
    std::vector<double> values;   // ascending
    std::vector<double> vectors;  // column k is the k-th eigenvector (row-major n x n)
};

/// Eigen decomposition of a real symmetric matrix given row-major.
inline SymEigen sym_eigen(std::vector<double> a, int n, bool want_vectors)
{
    SymEigen out;
    if (n == 0) return out;
    std::vector<double> d(n), e(n);
    detail::tridiagonalize(a, n, d, e, want_vectors);
    detail::ql_implicit(d, e, n, want_vectors ? &a : nullptr);

    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](int i, int j) { return d[i] < d[j]; });

    out.values.resize(n);
    if (want_vectors) out.vectors.assign(static_cast<std::size_t>(n) * n, 0.0);
    for (int k = 0; k < n; ++k) {
        out.values[k] = d[idx[k]];
        if (want_vectors)
            for (int r = 0; r < n; ++r)
                out.vectors[static_cast<std::size_t>(r) * n + k] =
                    a[static_cast<std::size_t>(r) * n + idx[k]];
    }
    return out;
}

// ---------------------------------------------------------------------------
// Complex Hermitian problems via the real embedding [[X, -Y], [Y, X]].
// The embedding is a *-algebra isomorphism, so matrix functions commute with
// it; each eigenvalue of the Hermitian matrix shows up twice.

inline std::vector<double> embed_hermitian(const CMatrix& h)
{
    const int n = static_cast<int>(h.rows());
    std::vector<double> a(static_cast<std::size_t>(2 * n) * (2 * n), 0.0);
    auto at = [&](int i, int j) -> double& { return a[static_cast<std::size_t>(i) * 2 * n + j]; };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double x = h(i, j).real(), y = h(i, j).imag();
            at(i, j) = x;
            at(i + n, j + n) = x;
            at(i + n, j) = y;
            at(i, j + n) = -y;
        }
    return a;
}

/// All eigenvalues of a Hermitian matrix, ascending (each listed once).
inline std::vector<double> hermitian_eigenvalues(const CMatrix& h)
{
    const int n = static_cast<int>(h.rows());
    if (h.cols() != h.rows()) throw std::invalid_argument("hermitian_eigenvalues: not square");
    if (n == 0) return {};
    auto eig = sym_eigen(embed_hermitian(h), 2 * n, false);
    // doubled spectrum: take every other value
    std::vector<double> out(n);
    for (int k = 0; k < n; ++k) out[k] = 0.5 * (eig.values[2 * k] + eig.values[2 * k + 1]);
    return out;
}

inline double hermitian_min_eigenvalue(const CMatrix& h)
{
    auto v = hermitian_eigenvalues(h);
    return v.empty() ? 0.0 : v.front();
}

inline double hermitian_max_eigenvalue(const CMatrix& h)
{
    auto v = hermitian_eigenvalues(h);
    return v.empty() ? 0.0 : v.back();
}

/// Spectral norm of a Hermitian matrix.
inline double hermitian_norm(const CMatrix& h)
{
    auto v = hermitian_eigenvalues(h);
    double m = 0.0;
    for (double x : v) m = std::max(m, std::fabs(x));
    return m;
}

/// Hermitian square root with clipping: eigenvalues in [clip_floor, 0) are
/// treated as roundoff and clipped to 0; anything below clip_floor throws.
inline CMatrix hermitian_sqrt_clipped(const CMatrix& h, double clip_floor = -1e-12)
{
    const int n = static_cast<int>(h.rows());
    if (h.cols() != h.rows()) throw std::invalid_argument("hermitian_sqrt_clipped: not square");
    if (n == 0) return CMatrix(0, 0);

    auto eig = sym_eigen(embed_hermitian(h), 2 * n, true);
    for (double v : eig.values)
        if (v < clip_floor)
            throw std::domain_error("hermitian_sqrt_clipped: matrix is not positive semidefinite");

    const int m = 2 * n;
    auto vec = [&](int i, int k) { return eig.vectors[static_cast<std::size_t>(i) * m + k]; };
    // S = V sqrt(clip(D)) V^T, then read the complex matrix off the embedding
    std::vector<double> s(static_cast<std::size_t>(m) * m, 0.0);
    for (int k = 0; k < m; ++k) {
        double lam = eig.values[k] < 0 ? 0.0 : std::sqrt(eig.values[k]);
        if (lam == 0.0) continue;
        for (int i = 0; i < m; ++i) {
            double vik = vec(i, k) * lam;
            if (vik == 0.0) continue;
            for (int j = 0; j < m; ++j)
                s[static_cast<std::size_t>(i) * m + j] += vik * vec(j, k);
        }
    }
    CMatrix out(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            out(i, j) = CD(s[static_cast<std::size_t>(i) * m + j],
                           s[static_cast<std::size_t>(i + n) * m + j]);
    // symmetrize away embedding roundoff
    return CD(0.5, 0.0) * (out + out.adjoint());
}

// ---------------------------------------------------------------------------
// Thin SVD by one-sided Jacobi.

struct Svd {
    CMatrix u;                  // m x k
    std::vector<double> sigma;  // descending, length k = min(m, n)
    CMatrix v;                  // n x k
};

inline Svd svd(const CMatrix& input)
{
    const bool transposed = input.rows() < input.cols();
    CMatrix w = transposed ? input.adjoint() : input;
    const std::size_t m = w.rows(), n = w.cols();
    CMatrix v = CMatrix::identity(n);

    const double tol = 1e-13;
    for (int sweep = 0; sweep < 60; ++sweep) {
        bool rotated = false;
        for (std::size_t i = 0; i + 1 < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                double a = 0.0, b = 0.0;
                CD g(0.0, 0.0);
                for (std::size_t k = 0; k < m; ++k) {
                    a += std::norm(w(k, i));
                    b += std::norm(w(k, j));
                    g += std::conj(w(k, i)) * w(k, j);
                }
                double ga = std::abs(g);
                if (ga <= tol * std::sqrt(a * b) || ga == 0.0) continue;
                rotated = true;
                CD phase = g / ga;
                double tau = (b - a) / (2.0 * ga);
                double t = (tau >= 0 ? 1.0 : -1.0) / (std::fabs(tau) + std::sqrt(1.0 + tau * tau));
                double c = 1.0 / std::sqrt(1.0 + t * t);
                double s = c * t;
                CD spb = s * phase;          // s e^{i phi}
                CD spc = s * std::conj(phase);
                for (std::size_t k = 0; k < m; ++k) {
                    CD wi = w(k, i), wj = w(k, j);
                    w(k, i) = c * wi - spc * wj;
                    w(k, j) = spb * wi + c * wj;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    CD vi = v(k, i), vj = v(k, j);
                    v(k, i) = c * vi - spc * vj;
                    v(k, j) = spb * vi + c * vj;
                }
            }
        if (!rotated) break;
    }

    Svd out;
    out.sigma.resize(n);
    out.u = CMatrix(m, n);
    for (std::size_t j = 0; j < n; ++j) {
        double norm2 = 0.0;
        for (std::size_t k = 0; k < m; ++k) norm2 += std::norm(w(k, j));
        double sg = std::sqrt(norm2);
        out.sigma[j] = sg;
        if (sg > 0)
            for (std::size_t k = 0; k < m; ++k) out.u(k, j) = w(k, j) / sg;
    }
    out.v = v;

    // order singular values descending
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t i, std::size_t j) { return out.sigma[i] > out.sigma[j]; });
    Svd sorted;
    sorted.sigma.resize(n);
    sorted.u = CMatrix(m, n);
    sorted.v = CMatrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        sorted.sigma[k] = out.sigma[idx[k]];
        for (std::size_t r = 0; r < m; ++r) sorted.u(r, k) = out.u(r, idx[k]);
        for (std::size_t r = 0; r < n; ++r) sorted.v(r, k) = out.v(r, idx[k]);
    }
    if (transposed) std::swap(sorted.u, sorted.v);
    return sorted;
}

inline std::vector<double> singular_values(const CMatrix& m)
{
    if (m.rows() == 0 || m.cols() == 0) return {};
    return svd(m).sigma;
}

/// Numerical rank: singular values above rel_tol times the largest.
inline std::size_t svd_rank(const CMatrix& m, double rel_tol)
{
    if (m.rows() == 0 || m.cols() == 0) return 0;
    auto s = singular_values(m);
    if (s.empty() || s[0] == 0.0) return 0;
    std::size_t r = 0;
    for (double x : s)
        if (x > rel_tol * s[0]) ++r;
    return r;
}

inline double smallest_singular_value(const CMatrix& m)
{
    auto s = singular_values(m);
    return s.empty() ? 0.0 : s.back();
}

// ---------------------------------------------------------------------------
// Seeded deterministic randomness and the power-iteration spectral norm used
// for the larger multiplier sections.

inline std::uint64_t splitmix64(std::uint64_t& state)
{
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline double uniform01(std::uint64_t& state)
{
    return static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
}

inline CD random_unit_complex(std::uint64_t& state)
{
    return {2.0 * uniform01(state) - 1.0, 2.0 * uniform01(state) - 1.0};
}

/// Largest singular value. Power iteration on the Gram matrix of the smaller
/// side; deterministic per seed, restarted once for safety.
inline double spectral_norm(const CMatrix& mat, std::uint64_t seed = 0x5eed)
{
    if (mat.rows() == 0 || mat.cols() == 0) return 0.0;
    const CMatrix& g = mat;
    const bool use_mtm = mat.cols() <= mat.rows();
    const std::size_t n = use_mtm ? mat.cols() : mat.rows();

    auto apply = [&](const std::vector<CD>& x, std::vector<CD>& tmp, std::vector<CD>& out) {
        if (use_mtm) {
            tmp.assign(g.rows(), CD(0, 0));
            for (std::size_t i = 0; i < g.rows(); ++i)
                for (std::size_t j = 0; j < n; ++j) tmp[i] += g(i, j) * x[j];
            out.assign(n, CD(0, 0));
            for (std::size_t i = 0; i < g.rows(); ++i)
                for (std::size_t j = 0; j < n; ++j) out[j] += std::conj(g(i, j)) * tmp[i];
        } else {
            tmp.assign(g.cols(), CD(0, 0));
            for (std::size_t j = 0; j < g.cols(); ++j)
                for (std::size_t i = 0; i < n; ++i) tmp[j] += std::conj(g(i, j)) * x[i];
            out.assign(n, CD(0, 0));
            for (std::size_t j = 0; j < g.cols(); ++j)
                for (std::size_t i = 0; i < n; ++i) out[i] += g(i, j) * tmp[j];
        }
    };

    double best = 0.0;
    for (int restart = 0; restart < 2; ++restart) {
        std::uint64_t state = seed + 0x9e37ULL * static_cast<std::uint64_t>(restart + 1);
        std::vector<CD> x(n), tmp, y;
        for (auto& e : x) e = random_unit_complex(state);
        double lam = 0.0;
        int stable = 0;
        for (int it = 0; it < 20000; ++it) {
            double nx = 0.0;
            for (const auto& e : x) nx += std::norm(e);
            nx = std::sqrt(nx);
            if (nx == 0.0) break;
            for (auto& e : x) e /= nx;
            apply(x, tmp, y);
            double lam_new = 0.0;
            for (std::size_t k = 0; k < n; ++k)
                lam_new += (std::conj(x[k]) * y[k]).real();
            x = y;
            if (std::fabs(lam_new - lam) <= 1e-14 * std::max(1.0, std::fabs(lam_new))) {
                if (++stable >= 3) { lam = lam_new; break; }
            } else {
                stable = 0;
            }
            lam = lam_new;
        }
        best = std::max(best, lam);
    }
    return std::sqrt(std::max(best, 0.0));
}

} // namespace num
} // namespace dalat
