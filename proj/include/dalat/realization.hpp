#pragma once

#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

#include "dalat/basis.hpp"
#include "dalat/numerics.hpp"

namespace dalat {

/// State-space data (A, B, C, D) for f(z) = D + C (I - zA)^{-o} o (zB).
/// Evaluation goes through the matrix eigenfunction e_A and the discrete
/// antiderivative, so no power-series convergence is assumed.
template <class T>
struct Realization {
    Matrix<T> A, B, C, D;

    Realization() = default;
    Realization(Matrix<T> a, Matrix<T> b, Matrix<T> c, Matrix<T> d)
        : A(std::move(a)), B(std::move(b)), C(std::move(c)), D(std::move(d))
    {
        validate_shapes();
    }

    static Realization constant(Matrix<T> d)
    {
        std::size_t m = d.rows(), p = d.cols();
        return Realization(Matrix<T>(0, 0), Matrix<T>(0, p), Matrix<T>(m, 0), std::move(d));
    }

    std::size_t state_dim() const { return A.rows(); }
    std::size_t out_dim() const { return D.rows(); }
    std::size_t in_dim() const { return D.cols(); }

    void validate_shapes() const
    {
        if (A.rows() != A.cols()) throw std::invalid_argument("Realization: A not square");
        if (B.rows() != A.rows()) throw std::invalid_argument("Realization: B row mismatch");
        if (C.cols() != A.rows()) throw std::invalid_argument("Realization: C column mismatch");
        if (D.rows() != C.rows() || D.cols() != B.cols())
            throw std::invalid_argument("Realization: D shape mismatch");
    }
};

struct Admissibility {
    bool admissible = false;
    std::string witness;  // empty when admissible
};

/// A is admissible when neither -2a+ nor -2a- is an eigenvalue, i.e. both
/// I + a+ A and I + a- A are invertible. Exact mode tests the determinant
/// exactly; float mode uses the smallest singular value.
template <class T>
Admissibility check_admissible(const Matrix<T>& a, double tol = 1e-10)
{
    using ST = ScalarTraits<T>;
    if (a.rows() != a.cols())
        throw std::invalid_argument("check_admissible: matrix not square");
    Matrix<T> id = Matrix<T>::identity(a.rows());
    Matrix<T> fp = id + ST::alpha_plus() * a;
    Matrix<T> fm = id + ST::alpha_minus() * a;

    auto singular = [&](const Matrix<T>& f) {
        if constexpr (ST::exact)
            return ST::is_zero(determinant(f));
        else
            return num::smallest_singular_value(f) <= tol;
    };

    if (singular(fp)) return {false, "I + alpha_plus*A singular (-2*alpha_minus is an eigenvalue)"};
    if (singular(fm)) return {false, "I + alpha_minus*A singular (-2*alpha_plus is an eigenvalue)"};
    return {true, ""};
}

template <class T>
void require_admissible(const Matrix<T>& a, const char* who)
{
    auto adm = check_admissible(a);
    if (!adm.admissible)
        throw std::domain_error(std::string(who) + ": inadmissible state matrix: " + adm.witness);
}

/// Shift factors of the matrix eigenfunction: one horizontal step multiplies
/// by I+A, one vertical step by (I+a+A)(I+a-A)^{-1}.
template <class T>
struct ResolventFactors {
    Matrix<T> horizontal;     // I + A
    Matrix<T> vertical_up;    // (I+a+A)(I+a-A)^{-1}
    Matrix<T> vertical_down;  // its inverse
};

template <class T>
ResolventFactors<T> resolvent_factors(const Matrix<T>& a)
{
    using ST = ScalarTraits<T>;
    require_admissible(a, "resolvent_factors");
    Matrix<T> id = Matrix<T>::identity(a.rows());
    Matrix<T> fp = id + ST::alpha_plus() * a;
    Matrix<T> fm = id + ST::alpha_minus() * a;
    ResolventFactors<T> f;
    f.horizontal = id + a;
    f.vertical_up = solve(fm, fp);    // fm^{-1} fp; factors commute
    f.vertical_down = solve(fp, fm);
    return f;
}

/// e_A(z) = (I+A)^Re(z) (I+a+A)^Im(z) (I+a-A)^(-Im(z)), the (I-zA)^{-o}
/// resolvent. Negative heights use the inverse vertical factor.
template <class T>
Matrix<T> resolvent_eval(const Matrix<T>& a, LatticePoint z)
{
    if (z.x < 0) throw std::domain_error("resolvent_eval: point outside the half-lattice");
    auto f = resolvent_factors(a);
    Matrix<T> e = Matrix<T>::identity(a.rows());
    for (int k = 0; k < z.x; ++k) e = f.horizontal * e;
    const Matrix<T>& v = z.y >= 0 ? f.vertical_up : f.vertical_down;
    for (int k = 0; k < std::abs(z.y); ++k) e = v * e;
    return e;
}

namespace detail {

/// Walks the canonical staircase to z accumulating the trapezoid integral of
/// g = e_A B, and returns D + C ((g(0)-g(z))/2 + integral).
template <class T>
Matrix<T> rational_eval_walk(const Realization<T>& r, const ResolventFactors<T>& f,
                             LatticePoint z)
{
    using ST = ScalarTraits<T>;
    const T half = ST::half();
    const T i_unit = ST::imag_unit();

    Matrix<T> e = Matrix<T>::identity(r.state_dim());
    Matrix<T> g_prev = e * r.B;  // = B at the origin
    const Matrix<T> g0 = g_prev;
    Matrix<T> acc(r.state_dim(), r.in_dim());

    auto step = [&](const Matrix<T>& factor, const T& dz) {
        e = factor * e;
        Matrix<T> g_cur = e * r.B;
        acc = acc + (g_prev + g_cur) * (half * dz);
        g_prev = std::move(g_cur);
    };

    for (int k = 0; k < z.x; ++k) step(f.horizontal, ST::one());
    if (z.y >= 0)
        for (int k = 0; k < z.y; ++k) step(f.vertical_up, i_unit);
    else
        for (int k = 0; k < -z.y; ++k) step(f.vertical_down, -i_unit);

    Matrix<T> zg = (g0 - g_prev) * half + acc;
    return r.D + r.C * zg;
}

} // namespace detail

/// Evaluates the rational discrete analytic function at a point of the
/// half-lattice.
template <class T>
Matrix<T> rational_eval(const Realization<T>& r, LatticePoint z)
{
    if (z.x < 0) throw std::domain_error("rational_eval: point outside the half-lattice");
    if (r.state_dim() == 0) return r.D;
    auto f = resolvent_factors(r.A);
    return detail::rational_eval_walk(r, f, z);
}

/// Table of values over a window.
template <class T>
LatticeFunction<T> rational_table(const Realization<T>& r, Window w)
{
    if (r.state_dim() == 0)
        return LatticeFunction<T>::tabulate(w, r.out_dim(), r.in_dim(),
                                            [&](LatticePoint) { return r.D; });
    auto f = resolvent_factors(r.A);
    return LatticeFunction<T>::tabulate(w, r.out_dim(), r.in_dim(), [&](LatticePoint p) {
        return detail::rational_eval_walk(r, f, p);
    });
}

/// Markov parameters (D, CB, CAB, ..., CA^{K-1}B) as a coefficient series;
/// these are the Taylor coefficients of the function at the origin.
template <class T>
CoefficientSeries<T> markov_params(const Realization<T>& r, std::size_t k_max)
{
    CoefficientSeries<T> out(r.out_dim(), r.in_dim(), k_max + 1);
    out.coeffs[0] = r.D;
    Matrix<T> akb = r.B;
    for (std::size_t k = 1; k <= k_max; ++k) {
        out.coeffs[k] = r.C * akb;
        if (k < k_max) akb = r.A * akb;
    }
    return out;
}

/// Classical transfer-function value D + t C (I - tA)^{-1} B.
template <class T>
Matrix<T> transfer_eval(const Realization<T>& r, const T& t)
{
    if (r.state_dim() == 0) return r.D;
    Matrix<T> m = Matrix<T>::identity(r.state_dim()) - t * r.A;
    Matrix<T> x;
    try {
        x = solve(m, r.B);
    } catch (const std::domain_error&) {
        throw std::domain_error("transfer_eval: I - tA is singular at this t");
    }
    return r.D + t * (r.C * x);
}

/// Builds a block-companion realization of num(t)/den(t). den must not
/// vanish at 0 (so the Maclaurin series exists) nor at -a+ or -a-, which is
/// exactly admissibility of the companion matrix.
template <class T>
Realization<T> realize_transfer(const CoefficientSeries<T>& num, const std::vector<T>& den)
{
    using ST = ScalarTraits<T>;
    if (den.empty() || ST::is_zero(den[0]))
        throw std::domain_error("realize_transfer: denominator vanishes at 0");
    {
        T at_p = poly_eval(den, -ST::alpha_plus());
        T at_m = poly_eval(den, -ST::alpha_minus());
        if constexpr (ST::exact) {
            if (ST::is_zero(at_p) || ST::is_zero(at_m))
                throw std::domain_error("realize_transfer: denominator vanishes at an excluded point");
        } else {
            if (std::abs(ST::to_complex(at_p)) < 1e-12 || std::abs(ST::to_complex(at_m)) < 1e-12)
                throw std::domain_error("realize_transfer: denominator vanishes at an excluded point");
        }
    }

    const std::size_t m = num.rows, p = num.cols;
    const T inv0 = ST::one() / den[0];

    // normalized denominator 1 + d1 t + ... and D = num(0)/den(0)
    std::vector<T> d(den.size());
    for (std::size_t k = 0; k < den.size(); ++k) d[k] = den[k] * inv0;
    Matrix<T> dmat = num.padded(0) * inv0;

    // N(t) = (num(t)/den0 - D d(t)) / t, degree <= ell-1
    std::size_t ell = std::max(num.length(), den.size()) - 1;
    std::vector<Matrix<T>> nblocks;
    bool all_zero = true;
    for (std::size_t k = 0; k < ell; ++k) {
        Matrix<T> nk = num.padded(k + 1) * inv0 -
                       dmat * (k + 1 < d.size() ? d[k + 1] : ST::zero());
        if (!nk.is_zero()) all_zero = false;
        nblocks.push_back(std::move(nk));
    }
    if (all_zero || ell == 0)
        return Realization<T>::constant(dmat);

    const std::size_t n = ell * p;
    Matrix<T> a(n, n), b(n, p), c(m, n);
    for (std::size_t j = 0; j < ell; ++j) {
        T coeff = (j + 1 < d.size()) ? -d[j + 1] : ST::zero();
        for (std::size_t k = 0; k < p; ++k) a(k, j * p + k) = coeff;
        if (j + 1 < ell)
            for (std::size_t k = 0; k < p; ++k) a((j + 1) * p + k, j * p + k) = ST::one();
        c.set_block(0, j * p, nblocks[j]);
    }
    for (std::size_t k = 0; k < p; ++k) b(k, k) = ST::one();

    return Realization<T>(std::move(a), std::move(b), std::move(c), std::move(dmat));
}

enum class Combine { sum, product };

/// Cascade formulas. combine(product, r2, r1) realizes f2 o f1 (the
/// convolution product, mapped to the pointwise product by the transfer
/// map); combine(sum, ...) is the block-diagonal sum.
template <class T>
Realization<T> combine(Combine kind, const Realization<T>& r2, const Realization<T>& r1)
{
    const std::size_t n1 = r1.state_dim(), n2 = r2.state_dim();
    if (kind == Combine::sum) {
        if (r1.out_dim() != r2.out_dim() || r1.in_dim() != r2.in_dim())
            throw std::invalid_argument("combine(sum): shape mismatch");
        Matrix<T> a(n1 + n2, n1 + n2);
        a.set_block(0, 0, r1.A);
        a.set_block(n1, n1, r2.A);
        return Realization<T>(std::move(a), vstack(r1.B, r2.B), hstack(r1.C, r2.C),
                              r1.D + r2.D);
    }

    // product: output of f1 feeds the input of f2
    if (r2.in_dim() != r1.out_dim())
        throw std::invalid_argument("combine(product): inner dimension mismatch");
    Matrix<T> a(n1 + n2, n1 + n2);
    a.set_block(0, 0, r1.A);
    a.set_block(n1, 0, r2.B * r1.C);
    a.set_block(n1, n1, r2.A);
    Matrix<T> b = vstack(r1.B, r2.B * r1.D);
    Matrix<T> c = hstack(r2.D * r1.C, r2.C);
    return Realization<T>(std::move(a), std::move(b), std::move(c), r2.D * r1.D);
}

/// Convolution inverse f^{-o}: requires invertible D and admissibility of
/// the Schur-complement state matrix A - B D^{-1} C.
template <class T>
Realization<T> invert(const Realization<T>& r)
{
    using ST = ScalarTraits<T>;
    if (r.out_dim() != r.in_dim())
        throw std::invalid_argument("invert: D must be square");
    Matrix<T> dinv;
    try {
        dinv = inverse(r.D);
    } catch (const std::domain_error&) {
        throw std::domain_error("invert: D is singular");
    }
    if constexpr (!ST::exact) {
        if (!r.D.empty() && num::smallest_singular_value(to_complex_matrix(r.D)) < 1e-12)
            throw std::domain_error("invert: D is singular");
    }
    Matrix<T> a_cross = r.A - r.B * dinv * r.C;
    require_admissible(a_cross, "invert");
    return Realization<T>(std::move(a_cross), r.B * dinv, -(dinv * r.C), dinv);
}

template <class T>
struct MinimalRealization {
    Realization<T> system;
    std::size_t degree = 0;
};

/// Minimal realization from Markov parameters by rank factorization of the
/// block Hankel matrix. Exact mode uses the exact echelon rank; float mode
/// thresholds singular values at rel_tol * sigma_1. Throws when the data
/// cannot certify the degree (needs K >= 2*degree + 1).
template <class T>
MinimalRealization<T> minimal_realization(const CoefficientSeries<T>& markov,
                                          double rel_tol = 1e-8)
{
    using ST = ScalarTraits<T>;
    if (markov.length() < 1)
        throw std::invalid_argument("minimal_realization: need at least the constant term");
    const std::size_t k_cnt = markov.length() - 1;  // shifted parameters available
    const std::size_t m = markov.rows, p = markov.cols;

    if (k_cnt == 0) {
        // only D given: constant function, degree 0
        return {Realization<T>::constant(markov.coeffs[0]), 0};
    }

    const std::size_t q = k_cnt / 2, qp = k_cnt - q;  // q block rows, qp block cols
    if (q == 0) {
        // a single shifted parameter certifies a constant when it vanishes
        if (markov.coeffs[1].is_zero())
            return {Realization<T>::constant(markov.coeffs[0]), 0};
        throw std::domain_error("minimal_realization: markov sequence too short");
    }

    Matrix<T> h(q * m, qp * p), hup(q * m, qp * p);
    for (std::size_t i = 0; i < q; ++i)
        for (std::size_t j = 0; j < qp; ++j) {
            h.set_block(i * m, j * p, markov.coeffs[i + j + 1]);
            if (i + j + 2 <= k_cnt) hup.set_block(i * m, j * p, markov.coeffs[i + j + 2]);
        }

    std::size_t rank = 0;
    Matrix<T> pfac, qfac;  // h = pfac * qfac, pfac full column rank
    if constexpr (ST::exact) {
        auto r = rref(h);
        rank = r.rank;
        pfac = Matrix<T>(h.rows(), rank);
        for (std::size_t k = 0; k < rank; ++k)
            pfac.set_block(0, k, h.block(0, r.pivot_cols[k], h.rows(), 1));
        qfac = r.reduced;
    } else {
        auto s = num::svd(h);
        while (rank < s.sigma.size() && s.sigma[0] > 0 &&
               s.sigma[rank] > rel_tol * s.sigma[0])
            ++rank;
        pfac = Matrix<T>(h.rows(), rank);
        qfac = Matrix<T>(rank, h.cols());
        for (std::size_t k = 0; k < rank; ++k) {
            double root = std::sqrt(s.sigma[k]);
            for (std::size_t r2 = 0; r2 < h.rows(); ++r2)
                pfac(r2, k) = s.u(r2, k) * root;
            for (std::size_t c2 = 0; c2 < h.cols(); ++c2)
                qfac(k, c2) = std::conj(s.v(c2, k)) * root;
        }
    }

    if (2 * rank + 1 > markov.length())
        throw std::domain_error("minimal_realization: insufficient markov data for degree " +
                                std::to_string(rank));

    if (rank == 0) {
        bool tail_zero = true;
        for (std::size_t k = 1; k < markov.length(); ++k)
            if (!markov.coeffs[k].is_zero()) tail_zero = false;
        if (!tail_zero)
            throw std::domain_error("minimal_realization: zero Hankel with nonzero data");
        return {Realization<T>::constant(markov.coeffs[0]), 0};
    }

    // A = P^+ Hup Q^+, with the one-sided inverses of the rank factors
    Matrix<T> pstar = pfac.adjoint();
    Matrix<T> qstar = qfac.adjoint();
    Matrix<T> pinv_h = solve(pstar * pfac, pstar * hup);       // P^+ Hup
    Matrix<T> a = solve((qfac * qstar).transpose(), (pinv_h * qstar).transpose()).transpose();

    Matrix<T> c = pfac.block(0, 0, m, rank);
    Matrix<T> b = qfac.block(0, 0, rank, p);
    Realization<T> sys(std::move(a), std::move(b), std::move(c), markov.coeffs[0]);
    return {std::move(sys), rank};
}

/// Realization of the reproducing kernel K(., w) = sum_n z^(n) conj(w^(n)):
/// its transfer function is the coefficient-conjugated eigenfunction
/// t -> (1+t)^Re(w) ((1+a-t)/(1+a+t))^Im(w), realized in companion form.
template <class T>
Realization<T> kernel_realization(LatticePoint w)
{
    using ST = ScalarTraits<T>;
    if (w.x < 0) throw std::domain_error("kernel_realization: point outside the half-lattice");
    const long v = w.y;
    const long av = std::labs(v);
    // conjugated factors: swap alpha+ and alpha- relative to e_t(w)
    const T cnum = v >= 0 ? ST::alpha_minus() : ST::alpha_plus();
    const T cden = v >= 0 ? ST::alpha_plus() : ST::alpha_minus();

    std::vector<T> num = poly_mul(poly_binomial(ST::one(), w.x), poly_binomial(cnum, av));
    std::vector<T> den = poly_binomial(cden, av);
    return realize_transfer(CoefficientSeries<T>::scalar(std::move(num)), den);
}

/// Scalar annihilating polynomial p = sum_k c_k z^(k) with
/// sum_k c_k t^k = det(I - tA); by Cayley-Hamilton the convolution p o f is
/// a discrete analytic polynomial (coefficients vanish past deg p).
template <class T>
CoefficientSeries<T> annihilating_polynomial(const Realization<T>& r)
{
    require_admissible(r.A, "annihilating_polynomial");
    return CoefficientSeries<T>::scalar(det_resolvent_poly(r.A));
}

/// Dimension of span{delta_x f, delta_x^2 f, ...} sampled on the window:
/// columns are the vectorized iterated differences, rank as per mode.
template <class T>
std::size_t backward_shift_rank(const LatticeFunction<T>& f, std::size_t k_max, double tol)
{
    using ST = ScalarTraits<T>;
    if (k_max == 0) return 0;
    Window w = f.window();
    if (w.width() <= static_cast<int>(k_max))
        throw std::invalid_argument("backward_shift_rank: window too narrow for k_max differences");

    // common window after k_max horizontal differences
    Window common{w.x0, w.x1 - static_cast<int>(k_max), w.y0, w.y1};
    const std::size_t pts = static_cast<std::size_t>(common.size());
    const std::size_t entry_count = pts * f.rows() * f.cols();

    Matrix<T> samples(entry_count, k_max);
    LatticeFunction<T> cur = f;
    for (std::size_t k = 1; k <= k_max; ++k) {
        cur = apply_difference(Difference::dx, cur);
        std::size_t row = 0;
        for (int y = common.y0; y <= common.y1; ++y)
            for (int x = common.x0; x <= common.x1; ++x) {
                const Matrix<T>& v = cur.at({x, y});
                for (std::size_t i = 0; i < v.rows(); ++i)
                    for (std::size_t j = 0; j < v.cols(); ++j)
                        samples(row++, k - 1) = v(i, j);
            }
    }

    if constexpr (ST::exact)
        return exact_rank(samples);
    else
        return num::svd_rank(samples, tol);
}

} // namespace dalat
