#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "dalat/matrix.hpp"

namespace dalat {

/// Finite (or truncated) sequence of matrix coefficients f(n), n = 0..N,
/// representing a power series in the lattice basis polynomials.
template <class T>
struct CoefficientSeries {
    std::size_t rows = 1, cols = 1;
    std::vector<Matrix<T>> coeffs;

    CoefficientSeries() = default;
    CoefficientSeries(std::size_t r, std::size_t c, std::size_t len)
        : rows(r), cols(c), coeffs(len, Matrix<T>(r, c)) {}

    static CoefficientSeries scalar(std::vector<T> values)
    {
        CoefficientSeries s(1, 1, values.size());
        for (std::size_t n = 0; n < values.size(); ++n) s.coeffs[n](0, 0) = values[n];
        return s;
    }

    std::size_t length() const { return coeffs.size(); }

    const Matrix<T>& at(std::size_t n) const
    {
        if (n >= coeffs.size())
            throw std::invalid_argument("CoefficientSeries: index out of range");
        return coeffs[n];
    }

    /// Coefficient with zero padding past the stored length.
    Matrix<T> padded(std::size_t n) const
    {
        return n < coeffs.size() ? coeffs[n] : Matrix<T>(rows, cols);
    }

    /// Drops exactly-zero trailing coefficients (never below length 1).
    CoefficientSeries trimmed() const
    {
        CoefficientSeries out = *this;
        while (out.coeffs.size() > 1 && out.coeffs.back().is_zero())
            out.coeffs.pop_back();
        return out;
    }

    /// Backward shift: coefficients of the horizontal difference.
    CoefficientSeries shifted_left() const
    {
        CoefficientSeries out(rows, cols, coeffs.size() > 1 ? coeffs.size() - 1 : 1);
        for (std::size_t n = 1; n < coeffs.size(); ++n) out.coeffs[n - 1] = coeffs[n];
        return out;
    }

    friend bool operator==(const CoefficientSeries& a, const CoefficientSeries& b)
    {
        return a.rows == b.rows && a.cols == b.cols && a.coeffs == b.coeffs;
    }
};

/// Cauchy product: coeffs(n) = sum_m a(m) * b(n-m), truncated at
/// min(Na+Nb, max_len-1).
template <class T>
CoefficientSeries<T> convolve(const CoefficientSeries<T>& a, const CoefficientSeries<T>& b,
                              std::size_t max_len = std::numeric_limits<std::size_t>::max())
{
    if (a.cols != b.rows)
        throw std::invalid_argument("convolve: inner dimension mismatch");
    std::size_t natural = a.length() + b.length() - 1;
    std::size_t len = std::min(natural, max_len);
    if (len == 0) len = 1;
    CoefficientSeries<T> out(a.rows, b.cols, len);
    for (std::size_t m = 0; m < a.length(); ++m) {
        if (m >= len) break;
        for (std::size_t k = 0; k < b.length() && m + k < len; ++k)
            out.coeffs[m + k] = out.coeffs[m + k] + a.coeffs[m] * b.coeffs[k];
    }
    return out;
}

/// Squared Hardy-space norm: sum of squared Frobenius norms, exact in
/// exact mode.
template <class T>
typename ScalarTraits<T>::Real h2_norm_sq(const CoefficientSeries<T>& c)
{
    typename ScalarTraits<T>::Real s{};
    for (const auto& m : c.coeffs) s += m.frobenius_sq();
    return s;
}

template <class T>
double h2_norm(const CoefficientSeries<T>& c)
{
    return std::sqrt(ScalarTraits<T>::real_to_double(h2_norm_sq(c)));
}

// ---------------------------------------------------------------------------
// Scalar polynomial helpers (ascending coefficient vectors).

template <class T>
std::vector<T> poly_mul(const std::vector<T>& a, const std::vector<T>& b)
{
    using ST = ScalarTraits<T>;
    if (a.empty() || b.empty()) return {};
    std::vector<T> r(a.size() + b.size() - 1, ST::zero());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] += a[i] * b[j];
    return r;
}

template <class T>
T poly_eval(const std::vector<T>& p, const T& t)
{
    using ST = ScalarTraits<T>;
    T acc = ST::zero();
    for (std::size_t k = p.size(); k-- > 0;) acc = acc * t + p[k];
    return acc;
}

/// Coefficients of (1 + c t)^m for m >= 0.
template <class T>
std::vector<T> poly_binomial(const T& c, long m)
{
    using ST = ScalarTraits<T>;
    if (m < 0) throw std::invalid_argument("poly_binomial: negative exponent");
    std::vector<T> p(static_cast<std::size_t>(m) + 1, ST::zero());
    p[0] = ST::one();
    // p[k] = C(m,k) c^k built incrementally
    T coeff = ST::one();
    for (long k = 1; k <= m; ++k) {
        coeff = coeff * c * ST::from_int(m - k + 1) / ST::from_int(k);
        p[static_cast<std::size_t>(k)] = coeff;
    }
    return p;
}

/// Truncated reciprocal of a power series with p[0] != 0, to length n+1.
template <class T>
std::vector<T> series_reciprocal(const std::vector<T>& p, std::size_t n)
{
    using ST = ScalarTraits<T>;
    if (p.empty() || ST::is_zero(p[0]))
        throw std::domain_error("series_reciprocal: constant term is zero");
    std::vector<T> r(n + 1, ST::zero());
    T inv0 = ST::one() / p[0];
    r[0] = inv0;
    for (std::size_t k = 1; k <= n; ++k) {
        T acc = ST::zero();
        std::size_t jmax = std::min(k, p.size() - 1);
        for (std::size_t j = 1; j <= jmax; ++j) acc += p[j] * r[k - j];
        r[k] = -(acc * inv0);
    }
    return r;
}

/// Truncated product keeping terms up to degree n.
template <class T>
std::vector<T> series_product(const std::vector<T>& a, const std::vector<T>& b, std::size_t n)
{
    using ST = ScalarTraits<T>;
    std::vector<T> r(n + 1, ST::zero());
    for (std::size_t i = 0; i < a.size() && i <= n; ++i)
        for (std::size_t j = 0; j < b.size() && i + j <= n; ++j)
            r[i + j] += a[i] * b[j];
    return r;
}

} // namespace dalat
