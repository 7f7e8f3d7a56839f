#pragma once

#include <cmath>
#include <cstdlib>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dalat/matrix.hpp"

namespace dalat {

struct LatticePoint {
    int x = 0;
    int y = 0;

    friend bool operator==(const LatticePoint&, const LatticePoint&) = default;
    LatticePoint operator+(LatticePoint o) const { return {x + o.x, y + o.y}; }
    LatticePoint operator-(LatticePoint o) const { return {x - o.x, y - o.y}; }
    bool in_half_lattice() const { return x >= 0; }
};

inline std::string to_string(LatticePoint p)
{
    std::string s = std::to_string(p.x);
    if (p.y != 0) s += (p.y > 0 ? "+" : "") + std::to_string(p.y) + "i";
    return s;
}

/// Inclusive rectangle [x0..x1] x [y0..y1].
struct Window {
    int x0 = 0, x1 = 0, y0 = 0, y1 = 0;

    int width() const { return x1 - x0 + 1; }
    int height() const { return y1 - y0 + 1; }
    long size() const { return static_cast<long>(width()) * height(); }
    bool valid() const { return x0 <= x1 && y0 <= y1; }
    bool contains(LatticePoint p) const
    {
        return p.x >= x0 && p.x <= x1 && p.y >= y0 && p.y <= y1;
    }
    bool in_half_lattice() const { return x0 >= 0; }

    /// nx columns starting at x = 0, ny rows centered around y = 0.
    static Window sized(int nx, int ny)
    {
        int ylo = -(ny / 2);
        return {0, nx - 1, ylo, ylo + ny - 1};
    }

    friend bool operator==(const Window&, const Window&) = default;
};

/// Matrix-valued function sampled on a finite window of the half-lattice.
/// Values are immutable in normal use; operators return shrunk copies
/// rather than extrapolating.
template <class T>
class LatticeFunction {
public:
    LatticeFunction() = default;

    LatticeFunction(Window w, std::size_t rows, std::size_t cols)
        : win_(w), rows_(rows), cols_(cols),
          values_(static_cast<std::size_t>(w.size()), Matrix<T>(rows, cols))
    {
        if (!w.valid()) throw std::invalid_argument("LatticeFunction: empty window");
        if (!w.in_half_lattice())
            throw std::invalid_argument("LatticeFunction: window leaves the half-lattice");
    }

    Window window() const { return win_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    const Matrix<T>& at(LatticePoint p) const { return values_[index(p)]; }
    Matrix<T>& at(LatticePoint p) { return values_[index(p)]; }

    /// Builds a function from a pointwise rule.
    template <class F>
    static LatticeFunction tabulate(Window w, std::size_t rows, std::size_t cols, F&& f)
    {
        LatticeFunction out(w, rows, cols);
        for (int y = w.y0; y <= w.y1; ++y)
            for (int x = w.x0; x <= w.x1; ++x) {
                LatticePoint p{x, y};
                Matrix<T> v = f(p);
                if (v.rows() != rows || v.cols() != cols)
                    throw std::invalid_argument("LatticeFunction::tabulate: rule shape mismatch");
                out.at(p) = std::move(v);
            }
        return out;
    }

    /// Scalar-valued convenience wrapper.
    template <class F>
    static LatticeFunction tabulate_scalar(Window w, F&& f)
    {
        return tabulate(w, 1, 1, [&](LatticePoint p) {
            Matrix<T> m(1, 1);
            m(0, 0) = f(p);
            return m;
        });
    }

    friend bool operator==(const LatticeFunction& a, const LatticeFunction& b)
    {
        return a.win_ == b.win_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ &&
               a.values_ == b.values_;
    }

private:
    std::size_t index(LatticePoint p) const
    {
        if (!win_.contains(p))
            throw std::invalid_argument("LatticeFunction: point " + dalat::to_string(p) +
                                        " outside window");
        return static_cast<std::size_t>(p.y - win_.y0) * win_.width() +
               static_cast<std::size_t>(p.x - win_.x0);
    }

    Window win_{};
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Matrix<T>> values_;
};

enum class Difference { dx, dy, dbar, d, derivative };

inline const char* to_string(Difference k)
{
    switch (k) {
        case Difference::dx: return "dx";
        case Difference::dy: return "dy";
        case Difference::dbar: return "dbar";
        case Difference::d: return "d";
        case Difference::derivative: return "derivative";
    }
    return "?";
}

/// Pointwise difference operators. The output window shrinks by one in each
/// consumed direction; dbar, d and derivative consume both.
template <class T>
LatticeFunction<T> apply_difference(Difference kind, const LatticeFunction<T>& f)
{
    using ST = ScalarTraits<T>;
    const Window w = f.window();
    const bool need_x = kind != Difference::dy;
    const bool need_y = kind != Difference::dx;
    Window out{w.x0, w.x1 - (need_x ? 1 : 0), w.y0, w.y1 - (need_y ? 1 : 0)};
    if (!out.valid())
        throw std::invalid_argument("apply_difference: window too small");

    const T ap = ST::alpha_plus();
    const T am = ST::alpha_minus();
    const T half = ST::half();

    return LatticeFunction<T>::tabulate(out, f.rows(), f.cols(), [&](LatticePoint p) {
        const Matrix<T>& f0 = f.at(p);
        switch (kind) {
            case Difference::dx:
                return f.at({p.x + 1, p.y}) - f0;
            case Difference::dy:
                return f.at({p.x, p.y + 1}) - f0;
            case Difference::dbar:
            case Difference::d: {
                Matrix<T> dx = f.at({p.x + 1, p.y}) - f0;
                Matrix<T> dy = f.at({p.x, p.y + 1}) - f0;
                Matrix<T> dxdy = f.at({p.x + 1, p.y + 1}) - f.at({p.x, p.y + 1}) -
                                 f.at({p.x + 1, p.y}) + f0;
                const T& cx = (kind == Difference::dbar) ? am : ap;
                const T& cy = (kind == Difference::dbar) ? ap : am;
                return cx * dx + cy * dy + half * dxdy;
            }
            case Difference::derivative: {
                Matrix<T> dx = f.at({p.x + 1, p.y}) - f0;
                Matrix<T> dy = f.at({p.x, p.y + 1}) - f0;
                return half * (dx - dy);
            }
        }
        throw std::logic_error("apply_difference: unknown kind");
    });
}

struct AnalyticityReport {
    bool analytic = false;
    double max_residual = 0.0;
};

/// Tests the difference analogue of the Cauchy-Riemann equation cell by
/// cell. Exact mode admits tol = 0.
template <class T>
AnalyticityReport is_discrete_analytic(const LatticeFunction<T>& f, double tol)
{
    using ST = ScalarTraits<T>;
    using Real = typename ST::Real;
    const Window w = f.window();
    if (w.width() < 2 || w.height() < 2)
        throw std::invalid_argument("is_discrete_analytic: window must be at least 2x2");
    if (tol < 0) throw std::invalid_argument("is_discrete_analytic: negative tolerance");

    const T inv_1pi = ST::one() / (ST::one() + ST::imag_unit());  // 1/(1+i)
    const T inv_1mi = ST::one() / (ST::one() - ST::imag_unit());  // 1/(1-i)

    Real worst{};
    for (int y = w.y0; y < w.y1; ++y)
        for (int x = w.x0; x < w.x1; ++x) {
            Matrix<T> lhs = (f.at({x + 1, y + 1}) - f.at({x, y})) * inv_1pi;
            Matrix<T> rhs = (f.at({x + 1, y}) - f.at({x, y + 1})) * inv_1mi;
            Real r = (lhs - rhs).max_abs2();
            if (r > worst) worst = r;
        }

    AnalyticityReport rep;
    rep.max_residual = std::sqrt(ST::real_to_double(worst));
    // compare squared magnitudes so the exact mode never rounds
    Real tol2 = Real(tol) * Real(tol);
    rep.analytic = !(worst > tol2);
    return rep;
}

/// Path with unit horizontal/vertical steps.
struct PathSpec {
    std::vector<LatticePoint> vertices;

    void validate() const
    {
        if (vertices.empty())
            throw std::invalid_argument("PathSpec: empty path");
        for (std::size_t k = 1; k < vertices.size(); ++k) {
            LatticePoint d = vertices[k] - vertices[k - 1];
            if (!((std::abs(d.x) == 1 && d.y == 0) || (d.x == 0 && std::abs(d.y) == 1)))
                throw std::invalid_argument("PathSpec: step " + std::to_string(k) +
                                            " is not a unit step");
        }
    }

    bool closed() const
    {
        return vertices.size() > 1 && vertices.front() == vertices.back();
    }
};

/// Canonical staircase from the origin: all horizontal steps first, then
/// vertical ones.
inline PathSpec staircase_path(LatticePoint z)
{
    PathSpec p;
    p.vertices.push_back({0, 0});
    int sx = z.x >= 0 ? 1 : -1;
    for (int x = 0; x != z.x; x += sx) p.vertices.push_back({x + sx, 0});
    int sy = z.y >= 0 ? 1 : -1;
    for (int y = 0; y != z.y; y += sy) p.vertices.push_back({z.x, y + sy});
    return p;
}

/// Trapezoid sum along the path: sum of (f(prev)+f(cur))/2 * (cur-prev).
template <class T>
Matrix<T> discrete_integral(const LatticeFunction<T>& f, const PathSpec& path)
{
    using ST = ScalarTraits<T>;
    path.validate();
    for (const auto& v : path.vertices)
        if (!f.window().contains(v))
            throw std::invalid_argument("discrete_integral: path leaves the window");

    Matrix<T> acc(f.rows(), f.cols());
    const T half = ST::half();
    const T i = ST::imag_unit();
    for (std::size_t k = 1; k < path.vertices.size(); ++k) {
        LatticePoint a = path.vertices[k - 1];
        LatticePoint b = path.vertices[k];
        LatticePoint d = b - a;
        T step = ST::from_int(d.x) + i * ST::from_int(d.y);
        acc = acc + (f.at(a) + f.at(b)) * (half * step);
    }
    return acc;
}

/// Integral along the canonical staircase path from 0 to z. Path-independent
/// when f is discrete analytic (which the caller asserts).
template <class T>
Matrix<T> integral_from_origin(const LatticeFunction<T>& f, LatticePoint z)
{
    if (!f.window().contains({0, 0}))
        throw std::invalid_argument("integral_from_origin: window must contain 0");
    if (!f.window().contains(z))
        throw std::invalid_argument("integral_from_origin: endpoint outside window");
    return discrete_integral(f, staircase_path(z));
}

} // namespace dalat
