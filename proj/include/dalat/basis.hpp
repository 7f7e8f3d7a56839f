#pragma once

#include <cstdlib>
#include <stdexcept>
#include <vector>

#include "dalat/lattice.hpp"
#include "dalat/series.hpp"

namespace dalat {

/// Values of the basis polynomials z^(0..N) at one point, extracted as the
/// Taylor coefficients in t of (1+t)^x (1+a+ t)^y (1+a- t)^(-y). The factor
/// with negative exponent is expanded by truncated series division, which is
/// what makes points below the real axis work uniformly.
template <class T>
std::vector<T> basis_prefix(std::size_t n, LatticePoint z)
{
    using ST = ScalarTraits<T>;
    if (z.x < 0)
        throw std::domain_error("basis_prefix: point outside the half-lattice");

    std::vector<T> acc = poly_binomial(ST::one(), z.x);
    if (acc.size() > n + 1) acc.resize(n + 1);

    if (z.y != 0) {
        const long ay = std::labs(static_cast<long>(z.y));
        const T cnum = z.y > 0 ? ST::alpha_plus() : ST::alpha_minus();
        const T cden = z.y > 0 ? ST::alpha_minus() : ST::alpha_plus();
        acc = series_product(acc, poly_binomial(cnum, ay), n);
        acc = series_product(acc, series_reciprocal(poly_binomial(cden, ay), n), n);
    }
    acc.resize(n + 1, ST::zero());
    return acc;
}

template <class T>
T basis_poly(std::size_t n, LatticePoint z)
{
    return basis_prefix<T>(n, z).back();
}

/// Table of z^(n) over a window.
template <class T>
LatticeFunction<T> basis_table(std::size_t n, Window w)
{
    return LatticeFunction<T>::tabulate_scalar(w, [&](LatticePoint p) {
        return basis_poly<T>(n, p);
    });
}

/// Joint eigenfunction of the horizontal difference operator:
/// e_lambda(z) = (1+lambda)^Re(z) ((1+a+ lambda)/(1+a- lambda))^Im(z).
template <class T>
T e_lambda(const T& lambda, LatticePoint z)
{
    using ST = ScalarTraits<T>;
    if (z.x < 0)
        throw std::domain_error("e_lambda: point outside the half-lattice");
    const T den = ST::one() + ST::alpha_minus() * lambda;
    if (ST::is_zero(den))
        throw std::domain_error("e_lambda: 1 + alpha_minus*lambda vanishes");
    const T num = ST::one() + ST::alpha_plus() * lambda;
    if (z.y < 0 && ST::is_zero(num))
        throw std::domain_error("e_lambda: 1 + alpha_plus*lambda vanishes at negative height");

    T horiz = scalar_pow(ST::one() + lambda, z.x);
    T vert = z.y >= 0 ? scalar_pow(num / den, static_cast<long>(z.y))
                      : scalar_pow(den / num, -static_cast<long>(z.y));
    return horiz * vert;
}

template <class T>
LatticeFunction<T> e_lambda_table(const T& lambda, Window w)
{
    return LatticeFunction<T>::tabulate_scalar(w, [&](LatticePoint p) {
        return e_lambda(lambda, p);
    });
}

/// Converts a vertical-difference eigenvalue mu into the horizontal one
/// lambda spanning the same eigenspace.
template <class T>
T mu_to_lambda(const T& mu)
{
    using ST = ScalarTraits<T>;
    const T den = ST::one() + ST::alpha_plus() * mu;
    if (ST::is_zero(den))
        throw std::domain_error("mu_to_lambda: 1 + alpha_plus*mu vanishes");
    return -(ST::imag_unit() * mu) / den;
}

/// The extra eigenfunction admitted on the half-lattice only: supported on
/// the imaginary axis, (-i)^Im(z) there.
template <class T>
T e_minus_one(LatticePoint z)
{
    using ST = ScalarTraits<T>;
    if (z.x < 0)
        throw std::domain_error("e_minus_one: point outside the half-lattice");
    if (z.x > 0) return ST::zero();
    return scalar_pow(-ST::imag_unit(), static_cast<long>(z.y));
}

/// Discrete antiderivative (Zf)(z) = (f(0)-f(z))/2 + integral from 0 to z.
/// f must be discrete analytic on the window (the caller asserts this); the
/// result is then path-independent and stays on the same window.
template <class T>
LatticeFunction<T> z_apply(const LatticeFunction<T>& f)
{
    using ST = ScalarTraits<T>;
    if (!f.window().contains({0, 0}))
        throw std::invalid_argument("z_apply: window must contain 0");
    const Matrix<T>& f0 = f.at({0, 0});
    const T half = ST::half();
    return LatticeFunction<T>::tabulate(f.window(), f.rows(), f.cols(), [&](LatticePoint p) {
        return (f0 - f.at(p)) * half + integral_from_origin(f, p);
    });
}

/// Taylor coefficients (delta_x^n f)(0) for n = 0..N, read off along the
/// real-axis segment of the window by iterated forward differences.
template <class T>
CoefficientSeries<T> taylor_coefficients(const LatticeFunction<T>& f, std::size_t n_max)
{
    const Window w = f.window();
    if (w.y0 > 0 || w.y1 < 0 || w.x0 > 0 || w.x1 < static_cast<int>(n_max))
        throw std::invalid_argument("taylor_coefficients: window must contain [0..N] on the real axis");

    std::vector<Matrix<T>> row;
    row.reserve(n_max + 1);
    for (std::size_t x = 0; x <= n_max; ++x)
        row.push_back(f.at({static_cast<int>(x), 0}));

    CoefficientSeries<T> out(f.rows(), f.cols(), n_max + 1);
    out.coeffs[0] = row[0];
    for (std::size_t n = 1; n <= n_max; ++n) {
        for (std::size_t x = 0; x + n <= n_max; ++x) row[x] = row[x + 1] - row[x];
        out.coeffs[n] = row[0];
    }
    return out;
}

template <class T>
struct SeriesEvalResult {
    Matrix<T> value;
    bool diverging = false;       // last 10 partial-sum increments grew monotonically
    std::size_t terms_used = 0;
};

/// Partial sum of sum_n c(n) z^(n). The caller controls the truncation by
/// the series length; increments are monitored to flag geometric growth
/// (points outside the convergence radius).
template <class T>
SeriesEvalResult<T> series_eval(const CoefficientSeries<T>& c, LatticePoint z)
{
    using ST = ScalarTraits<T>;
    if (c.length() == 0)
        throw std::invalid_argument("series_eval: empty series");
    std::vector<T> basis = basis_prefix<T>(c.length() - 1, z);

    SeriesEvalResult<T> out;
    out.value = Matrix<T>(c.rows, c.cols);
    out.terms_used = c.length();

    std::vector<double> increments;
    increments.reserve(c.length());
    for (std::size_t n = 0; n < c.length(); ++n) {
        Matrix<T> term = c.coeffs[n] * basis[n];
        out.value = out.value + term;
        increments.push_back(ST::real_to_double(term.frobenius_sq()));
    }

    constexpr std::size_t window = 10;
    if (increments.size() > window) {
        bool growing = true;
        for (std::size_t k = increments.size() - window; k < increments.size(); ++k) {
            if (!(increments[k] > increments[k - 1])) { growing = false; break; }
        }
        out.diverging = growing;
    }
    return out;
}

} // namespace dalat
