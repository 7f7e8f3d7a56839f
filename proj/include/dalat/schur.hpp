#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "dalat/realization.hpp"

namespace dalat {

/// Block operator [[A,B],[C,D]] : state + input -> state + output, expected
/// to be a coisometry (M M* = I) so that S(z) = D + C(I-zA)^{-o} o (zB) is a
/// Schur function of the lattice.
template <class T>
struct Colligation {
    Matrix<T> A, B, C, D;
    double coisometry_tol = 1e-10;
    std::optional<std::uint64_t> seed;  // recorded when generated

    Colligation() = default;
    Colligation(Matrix<T> a, Matrix<T> b, Matrix<T> c, Matrix<T> d,
                double tol = 1e-10)
        : A(std::move(a)), B(std::move(b)), C(std::move(c)), D(std::move(d)),
          coisometry_tol(tol)
    {
        Realization<T>(A, B, C, D);  // reuse the shape checks
    }

    std::size_t state_dim() const { return A.rows(); }
    std::size_t out_dim() const { return D.rows(); }
    std::size_t in_dim() const { return D.cols(); }

    Matrix<T> block() const
    {
        return block2x2(A, B, C, D);
    }
};

struct CoisometryReport {
    bool coisometric = false;
    double defect_norm = 0.0;  // ||MM* - I||_2
};

/// Checks M M* = I. Exact mode compares exactly; the reported norm is the
/// spectral norm of the Hermitian defect.
template <class T>
CoisometryReport is_coisometry(const Matrix<T>& m, double tol)
{
    using ST = ScalarTraits<T>;
    Matrix<T> defect = m * m.adjoint() - Matrix<T>::identity(m.rows());
    CoisometryReport rep;
    rep.defect_norm = num::hermitian_norm(to_complex_matrix(defect));
    if constexpr (ST::exact)
        rep.coisometric = (tol == 0.0) ? defect.is_zero() : (rep.defect_norm <= tol);
    else
        rep.coisometric = rep.defect_norm <= tol;
    return rep;
}

/// Seeded random coisometry: Gram-Schmidt on the rows of a deterministic
/// pseudo-random matrix. Requires m <= p so a completion exists.
inline Colligation<std::complex<double>> random_coisometry(std::size_t n, std::size_t m,
                                                           std::size_t p, std::uint64_t seed)
{
    using CD = std::complex<double>;
    if (m > p)
        throw std::domain_error("random_coisometry: need m <= p for a coisometric completion");

    const std::size_t rows = n + m, cols = n + p;
    std::uint64_t state = seed * 0x9e3779b97f4a7c15ULL + 0x7c15ULL;
    Matrix<CD> g(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            g(i, j) = num::random_unit_complex(state);

    // modified Gram-Schmidt on rows, re-orthogonalized once for stability
    for (std::size_t i = 0; i < rows; ++i) {
        for (int pass = 0; pass < 2; ++pass)
            for (std::size_t k = 0; k < i; ++k) {
                CD proj(0, 0);
                for (std::size_t j = 0; j < cols; ++j) proj += std::conj(g(k, j)) * g(i, j);
                for (std::size_t j = 0; j < cols; ++j) g(i, j) -= proj * g(k, j);
            }
        double nrm = 0;
        for (std::size_t j = 0; j < cols; ++j) nrm += std::norm(g(i, j));
        nrm = std::sqrt(nrm);
        if (nrm < 1e-8)
            throw std::runtime_error("random_coisometry: degenerate draw");
        for (std::size_t j = 0; j < cols; ++j) g(i, j) /= nrm;
    }

    Colligation<CD> cg(g.block(0, 0, n, n), g.block(0, n, n, p),
                       g.block(n, 0, m, n), g.block(n, n, m, p));
    cg.seed = seed;
    return cg;
}

/// Hands the colligation blocks to the realization machinery. Contractive A
/// (always true for a coisometry) keeps the spectrum inside the closed unit
/// disk, away from -2a+ and -2a- whose modulus is sqrt(2).
template <class T>
Realization<T> schur_function(const Colligation<T>& cg)
{
    require_admissible(cg.A, "schur_function");
    return Realization<T>(cg.A, cg.B, cg.C, cg.D);
}

/// Coefficients S(0) = D, S(k) = C A^{k-1} B.
template <class T>
CoefficientSeries<T> schur_coefficients(const Colligation<T>& cg, std::size_t k_max)
{
    return markov_params(Realization<T>(cg.A, cg.B, cg.C, cg.D), k_max);
}

/// Closed-form kernel value F(z) F(w)* with F(z) = C e_A(z); the adjoint
/// identity (e_A(w))* = e_{A*}(conj w) keeps everything inside one mode.
template <class T>
Matrix<T> kernel_closed(const Colligation<T>& cg, LatticePoint z, LatticePoint w)
{
    if (cg.state_dim() == 0)
        return Matrix<T>(cg.out_dim(), cg.out_dim());
    Matrix<T> fz = cg.C * resolvent_eval(cg.A, z);
    Matrix<T> fw = cg.C * resolvent_eval(cg.A, w);
    return fz * fw.adjoint();
}

template <class T>
struct KernelSeriesResult {
    Matrix<T> value;
    double last_increment = 0.0;
    bool converged = true;  // false when the final term still exceeds the tolerance
};

/// Truncated kernel sum over n < terms of
///   z^(n) conj(w^(n)) I - (Z^n S)(z) (Z^n S)(w)*,
/// with each (Z^n S) evaluated from the shifted coefficient series of S.
/// tail_len controls the inner truncation of those series.
template <class T>
KernelSeriesResult<T> kernel_series(const Colligation<T>& cg, LatticePoint z, LatticePoint w,
                                    std::size_t terms, double tol = 1e-9,
                                    std::size_t tail_len = 160)
{
    using ST = ScalarTraits<T>;
    if (terms == 0) throw std::invalid_argument("kernel_series: need at least one term");

    const std::size_t total = terms + tail_len;
    auto sz = basis_prefix<T>(total, z);
    auto sw = basis_prefix<T>(total, w);
    auto coeffs = schur_coefficients(cg, tail_len);

    const std::size_t m = cg.out_dim();
    KernelSeriesResult<T> out;
    out.value = Matrix<T>(m, m);

    auto shifted_eval = [&](const std::vector<T>& basis, std::size_t n) {
        Matrix<T> acc(m, cg.in_dim());
        for (std::size_t k = 0; k <= tail_len; ++k)
            acc = acc + coeffs.coeffs[k] * basis[n + k];
        return acc;
    };

    double last = 0.0;
    for (std::size_t n = 0; n < terms; ++n) {
        Matrix<T> term(m, m);
        for (std::size_t i = 0; i < m; ++i)
            term(i, i) = sz[n] * ST::conj(sw[n]);
        Matrix<T> zsz = shifted_eval(sz, n);
        Matrix<T> zsw = shifted_eval(sw, n);
        term = term - zsz * zsw.adjoint();
        out.value = out.value + term;
        last = std::sqrt(ST::real_to_double(term.frobenius_sq()));
    }
    out.last_increment = last;
    out.converged = !(last > tol);
    return out;
}

/// Exact positive-semidefiniteness of a Hermitian matrix over the Gaussian
/// rationals by diagonally pivoted LDL*.
inline bool exact_psd(Matrix<GaussianRational> h)
{
    const std::size_t n = h.rows();
    if (h.cols() != n) throw std::invalid_argument("exact_psd: not square");
    std::vector<bool> done(n, false);
    for (std::size_t step = 0; step < n; ++step) {
        // pick a remaining index with positive diagonal
        std::size_t piv = n;
        for (std::size_t i = 0; i < n; ++i) {
            if (done[i]) continue;
            const GaussianRational& d = h(i, i);
            if (d.imag() != 0) throw std::invalid_argument("exact_psd: not Hermitian");
            if (d.real() < 0) return false;
            if (d.real() > 0 && piv == n) piv = i;
        }
        if (piv == n) {
            // all remaining diagonal entries vanish: PSD iff the rest is zero
            for (std::size_t i = 0; i < n; ++i) {
                if (done[i]) continue;
                for (std::size_t j = 0; j < n; ++j)
                    if (!done[j] && !h(i, j).is_zero()) return false;
            }
            return true;
        }
        done[piv] = true;
        GaussianRational d = h(piv, piv);
        for (std::size_t i = 0; i < n; ++i) {
            if (done[i]) continue;
            for (std::size_t j = 0; j < n; ++j) {
                if (done[j]) continue;
                h(i, j) = h(i, j) - h(i, piv) * h(piv, j) / d;
            }
        }
    }
    return true;
}

/// Block Gram matrix of kernel values over a point sample; block (i,j) is
/// K(points[i], points[j]), Hermitian by construction.
template <class T>
Matrix<T> kernel_gram(const Colligation<T>& cg, const std::vector<LatticePoint>& points)
{
    if (points.empty()) throw std::invalid_argument("kernel_gram: need at least one point");
    const std::size_t m = cg.out_dim(), np = points.size();
    Matrix<T> gram(np * m, np * m);
    for (std::size_t i = 0; i < np; ++i)
        for (std::size_t j = i; j < np; ++j) {
            Matrix<T> kij = kernel_closed(cg, points[i], points[j]);
            gram.set_block(i * m, j * m, kij);
            if (j > i) gram.set_block(j * m, i * m, kij.adjoint());
        }
    return gram;
}

struct GramReport {
    bool psd = false;
    double min_eig = 0.0;
};

/// Minimal eigenvalue of the kernel Gram matrix over the points. Exact mode
/// certifies positive semidefiniteness by pivoted LDL*.
template <class T>
GramReport gram_psd(const Colligation<T>& cg, const std::vector<LatticePoint>& points,
                    double tol)
{
    using ST = ScalarTraits<T>;
    Matrix<T> gram = kernel_gram(cg, points);
    GramReport rep;
    rep.min_eig = num::hermitian_min_eigenvalue(to_complex_matrix(gram));
    if constexpr (ST::exact)
        rep.psd = exact_psd(gram);
    else
        rep.psd = rep.min_eig >= -tol;
    return rep;
}

/// Completes a column contraction [A; C] to a coisometric colligation: the
/// defect I - M*M with M = [A* C*] admits a Hermitian square root N, and
/// [B; D] := N makes [[A,B],[C,D]] coisometric. The input space gets
/// dimension n + m.
inline Colligation<std::complex<double>> defect_completion(
    const Matrix<std::complex<double>>& a, const Matrix<std::complex<double>>& c)
{
    using CD = std::complex<double>;
    if (a.rows() != a.cols()) throw std::invalid_argument("defect_completion: A not square");
    if (c.cols() != a.rows()) throw std::invalid_argument("defect_completion: C column mismatch");
    const std::size_t n = a.rows(), m = c.rows();

    Matrix<CD> mstack = vstack(a, c);  // M* with M = [A* C*]
    Matrix<CD> defect = Matrix<CD>::identity(n + m) - mstack * mstack.adjoint();
    Matrix<CD> root;
    try {
        root = num::hermitian_sqrt_clipped(defect, -1e-12);
    } catch (const std::domain_error&) {
        throw std::domain_error("defect_completion: [A; C] is not a contraction");
    }

    return Colligation<CD>(a, root.block(0, 0, n, n + m), c, root.block(n, 0, m, n + m));
}

struct MultiplierReport {
    bool contractive = false;
    double opnorm = 0.0;
};

/// Spectral norm of the N-block lower-triangular finite section of the
/// convolution multiplier, block (i,j) = S(i-j). The flag allows the usual
/// 1e-9 slack above 1.
template <class T>
MultiplierReport multiplier_contraction(const Colligation<T>& cg, std::size_t n_blocks)
{
    if (n_blocks == 0) throw std::invalid_argument("multiplier_contraction: need N >= 1");
    auto coeffs = schur_coefficients(cg, n_blocks - 1);
    const std::size_t m = cg.out_dim(), p = cg.in_dim();

    Matrix<std::complex<double>> section(n_blocks * m, n_blocks * p);
    for (std::size_t i = 0; i < n_blocks; ++i)
        for (std::size_t j = 0; j <= i; ++j)
            section.set_block(i * m, j * p, to_complex_matrix(coeffs.coeffs[i - j]));

    MultiplierReport rep;
    rep.opnorm = num::spectral_norm(section);
    rep.contractive = rep.opnorm <= 1.0 + 1e-9;
    return rep;
}

/// Finite multiplier section as a plain matrix (used by the coefficient
/// identity checks).
template <class T>
Matrix<std::complex<double>> multiplier_section(const Colligation<T>& cg, std::size_t n_blocks)
{
    auto coeffs = schur_coefficients(cg, n_blocks == 0 ? 0 : n_blocks - 1);
    const std::size_t m = cg.out_dim(), p = cg.in_dim();
    Matrix<std::complex<double>> section(n_blocks * m, n_blocks * p);
    for (std::size_t i = 0; i < n_blocks; ++i)
        for (std::size_t j = 0; j <= i; ++j)
            section.set_block(i * m, j * p, to_complex_matrix(coeffs.coeffs[i - j]));
    return section;
}

} // namespace dalat
