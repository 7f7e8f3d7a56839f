#pragma once

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <utility>
#include <vector>

#include "dalat/scalar.hpp"

namespace dalat {

/// Dense row-major matrix over either scalar mode. Sizes here are small
/// (state dimensions, window samples), so the implementation favours
/// exactness and clarity over blocking.
template <class T>
class Matrix {
public:
    using Traits = ScalarTraits<T>;
    using Real = typename Traits::Real;

    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, Traits::zero()) {}

    Matrix(std::initializer_list<std::initializer_list<T>> init)
    {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_)
                throw std::invalid_argument("Matrix: ragged initializer");
            for (const auto& v : row) data_.push_back(v);
        }
    }

    static Matrix identity(std::size_t n)
    {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = Traits::one();
        return m;
    }

    static Matrix constant(std::size_t rows, std::size_t cols, const T& v)
    {
        Matrix m(rows, cols);
        for (auto& e : m.data_) e = v;
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

    T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    friend Matrix operator+(const Matrix& a, const Matrix& b)
    {
        a.require_same_shape(b, "operator+");
        Matrix r = a;
        for (std::size_t k = 0; k < r.data_.size(); ++k) r.data_[k] += b.data_[k];
        return r;
    }

    friend Matrix operator-(const Matrix& a, const Matrix& b)
    {
        a.require_same_shape(b, "operator-");
        Matrix r = a;
        for (std::size_t k = 0; k < r.data_.size(); ++k) r.data_[k] -= b.data_[k];
        return r;
    }

    Matrix operator-() const
    {
        Matrix r = *this;
        for (auto& e : r.data_) e = -e;
        return r;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b)
    {
        if (a.cols_ != b.rows_)
            throw std::invalid_argument("Matrix: inner dimension mismatch");
        Matrix r(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const T& aik = a(i, k);
                if (Traits::is_zero(aik)) continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    r(i, j) += aik * b(k, j);
            }
        return r;
    }

    friend Matrix operator*(const T& s, const Matrix& a)
    {
        Matrix r = a;
        for (auto& e : r.data_) e = s * e;
        return r;
    }

    friend Matrix operator*(const Matrix& a, const T& s) { return s * a; }

    friend bool operator==(const Matrix& a, const Matrix& b)
    {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    /// Conjugate transpose.
    Matrix adjoint() const
    {
        Matrix r(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                r(j, i) = Traits::conj((*this)(i, j));
        return r;
    }

    Matrix transpose() const
    {
        Matrix r(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                r(j, i) = (*this)(i, j);
        return r;
    }

    Matrix conjugated() const
    {
        Matrix r = *this;
        for (auto& e : r.data_) e = Traits::conj(e);
        return r;
    }

    bool is_zero() const
    {
        for (const auto& e : data_)
            if (!Traits::is_zero(e)) return false;
        return true;
    }

    Real frobenius_sq() const
    {
        Real s{};
        for (const auto& e : data_) s += Traits::abs2(e);
        return s;
    }

    Real max_abs2() const
    {
        Real s{};
        for (const auto& e : data_) {
            Real a = Traits::abs2(e);
            if (a > s) s = a;
        }
        return s;
    }

    T trace() const
    {
        T s = Traits::zero();
        for (std::size_t i = 0; i < rows_ && i < cols_; ++i) s += (*this)(i, i);
        return s;
    }

    Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const
    {
        if (r0 + nr > rows_ || c0 + nc > cols_)
            throw std::invalid_argument("Matrix::block: out of range");
        Matrix r(nr, nc);
        for (std::size_t i = 0; i < nr; ++i)
            for (std::size_t j = 0; j < nc; ++j)
                r(i, j) = (*this)(r0 + i, c0 + j);
        return r;
    }

    void set_block(std::size_t r0, std::size_t c0, const Matrix& b)
    {
        if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_)
            throw std::invalid_argument("Matrix::set_block: out of range");
        for (std::size_t i = 0; i < b.rows_; ++i)
            for (std::size_t j = 0; j < b.cols_; ++j)
                (*this)(r0 + i, c0 + j) = b(i, j);
    }

private:
    void require_same_shape(const Matrix& b, const char* who) const
    {
        if (rows_ != b.rows_ || cols_ != b.cols_)
            throw std::invalid_argument(std::string("Matrix: shape mismatch in ") + who);
    }

    std::size_t rows_ = 0, cols_ = 0;
    std::vector<T> data_;
};

template <class T>
Matrix<T> hstack(const Matrix<T>& a, const Matrix<T>& b)
{
    if (a.rows() != b.rows())
        throw std::invalid_argument("hstack: row mismatch");
    Matrix<T> r(a.rows(), a.cols() + b.cols());
    r.set_block(0, 0, a);
    r.set_block(0, a.cols(), b);
    return r;
}

template <class T>
Matrix<T> vstack(const Matrix<T>& a, const Matrix<T>& b)
{
    if (a.cols() != b.cols())
        throw std::invalid_argument("vstack: column mismatch");
    Matrix<T> r(a.rows() + b.rows(), a.cols());
    r.set_block(0, 0, a);
    r.set_block(a.rows(), 0, b);
    return r;
}

template <class T>
Matrix<T> block2x2(const Matrix<T>& a, const Matrix<T>& b,
                   const Matrix<T>& c, const Matrix<T>& d)
{
    return vstack(hstack(a, b), hstack(c, d));
}

/// Solves A X = B by Gauss-Jordan elimination with pivoting on the largest
/// |entry|^2. Exact in exact mode; throws on an exactly singular pivot.
template <class T>
Matrix<T> solve(Matrix<T> a, Matrix<T> b)
{
    using Traits = ScalarTraits<T>;
    const std::size_t n = a.rows();
    if (a.cols() != n) throw std::invalid_argument("solve: matrix not square");
    if (b.rows() != n) throw std::invalid_argument("solve: rhs row mismatch");

    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        auto best = Traits::abs2(a(col, col));
        for (std::size_t r = col + 1; r < n; ++r) {
            auto cand = Traits::abs2(a(r, col));
            if (cand > best) { best = cand; piv = r; }
        }
        if (Traits::is_zero(a(piv, col)))
            throw std::domain_error("solve: singular matrix");
        if (piv != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(col, j), a(piv, j));
            for (std::size_t j = 0; j < b.cols(); ++j) std::swap(b(col, j), b(piv, j));
        }
        T inv_p = Traits::one() / a(col, col);
        for (std::size_t j = 0; j < n; ++j) a(col, j) = a(col, j) * inv_p;
        for (std::size_t j = 0; j < b.cols(); ++j) b(col, j) = b(col, j) * inv_p;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || Traits::is_zero(a(r, col))) continue;
            T f = a(r, col);
            for (std::size_t j = 0; j < n; ++j) a(r, j) -= f * a(col, j);
            for (std::size_t j = 0; j < b.cols(); ++j) b(r, j) -= f * b(col, j);
        }
    }
    return b;
}

template <class T>
Matrix<T> inverse(const Matrix<T>& a)
{
    return solve(a, Matrix<T>::identity(a.rows()));
}

/// Determinant by elimination; det of the empty matrix is 1.
template <class T>
T determinant(Matrix<T> a)
{
    using Traits = ScalarTraits<T>;
    const std::size_t n = a.rows();
    if (a.cols() != n) throw std::invalid_argument("determinant: matrix not square");
    T det = Traits::one();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        auto best = Traits::abs2(a(col, col));
        for (std::size_t r = col + 1; r < n; ++r) {
            auto cand = Traits::abs2(a(r, col));
            if (cand > best) { best = cand; piv = r; }
        }
        if (Traits::is_zero(a(piv, col))) return Traits::zero();
        if (piv != col) {
            for (std::size_t j = col; j < n; ++j) std::swap(a(col, j), a(piv, j));
            det = -det;
        }
        det = det * a(col, col);
        T inv_p = Traits::one() / a(col, col);
        for (std::size_t r = col + 1; r < n; ++r) {
            if (Traits::is_zero(a(r, col))) continue;
            T f = a(r, col) * inv_p;
            for (std::size_t j = col; j < n; ++j) a(r, j) -= f * a(col, j);
        }
    }
    return det;
}

/// Reduced row echelon form. Returns the rank, the pivot column indices and
/// the nonzero rows R, so that A = A[:, pivots] * R exactly. Intended for
/// exact mode; in floating mode prefer the SVD-based rank.
template <class T>
struct Rref {
    std::size_t rank = 0;
    std::vector<std::size_t> pivot_cols;
    Matrix<T> reduced; // rank x cols
};

template <class T>
Rref<T> rref(Matrix<T> a)
{
    using Traits = ScalarTraits<T>;
    const std::size_t m = a.rows(), n = a.cols();
    std::size_t row = 0;
    std::vector<std::size_t> pivots;
    for (std::size_t col = 0; col < n && row < m; ++col) {
        std::size_t piv = row;
        auto best = Traits::abs2(a(row, col));
        for (std::size_t r = row + 1; r < m; ++r) {
            auto cand = Traits::abs2(a(r, col));
            if (cand > best) { best = cand; piv = r; }
        }
        if (Traits::is_zero(a(piv, col))) continue;
        if (piv != row)
            for (std::size_t j = 0; j < n; ++j) std::swap(a(row, j), a(piv, j));
        T inv_p = Traits::one() / a(row, col);
        for (std::size_t j = 0; j < n; ++j) a(row, j) = a(row, j) * inv_p;
        for (std::size_t r = 0; r < m; ++r) {
            if (r == row || Traits::is_zero(a(r, col))) continue;
            T f = a(r, col);
            for (std::size_t j = 0; j < n; ++j) a(r, j) -= f * a(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    Rref<T> out;
    out.rank = pivots.size();
    out.pivot_cols = std::move(pivots);
    out.reduced = a.block(0, 0, out.rank, n);
    return out;
}

template <class T>
std::size_t exact_rank(const Matrix<T>& a)
{
    return rref(a).rank;
}

/// Characteristic polynomial coefficients by the Faddeev-LeVerrier
/// recurrence: returns c with char(s) = s^n + c[1] s^(n-1) + ... + c[n]
/// (c[0] = 1). Exact over the rationals.
template <class T>
std::vector<T> char_poly(const Matrix<T>& a)
{
    using Traits = ScalarTraits<T>;
    const std::size_t n = a.rows();
    if (a.cols() != n) throw std::invalid_argument("char_poly: matrix not square");
    std::vector<T> c(n + 1, Traits::zero());
    c[0] = Traits::one();
    Matrix<T> m = Matrix<T>::identity(n);
    for (std::size_t k = 1; k <= n; ++k) {
        Matrix<T> am = a * m;
        c[k] = -(am.trace() / Traits::from_int(static_cast<long>(k)));
        m = am;
        for (std::size_t i = 0; i < n; ++i) m(i, i) += c[k];
    }
    return c;
}

/// Coefficients of det(I - tA) in ascending powers of t (degree n, constant
/// term 1): the reversed characteristic polynomial.
template <class T>
std::vector<T> det_resolvent_poly(const Matrix<T>& a)
{
    return char_poly(a); // det(I - tA) = sum_k c[k] t^k with the same c
}

inline Matrix<std::complex<double>> to_complex_matrix(const Matrix<GaussianRational>& a)
{
    Matrix<std::complex<double>> r(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            r(i, j) = a(i, j).to_complex();
    return r;
}

inline const Matrix<std::complex<double>>& to_complex_matrix(const Matrix<std::complex<double>>& a)
{
    return a;
}

} // namespace dalat
