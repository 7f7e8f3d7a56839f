#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "dalat/mesh.hpp"
#include "dalat/realization.hpp"
#include "dalat/schur.hpp"

namespace dalat {
namespace verify {

enum class Profile { quick, full };

struct CheckResult {
    std::string name;
    bool pass = false;
    double residual = 0.0;  // largest measured deviation (0 when exact)
    std::string detail;
};

using GR = GaussianRational;
using CD = std::complex<double>;
using STG = ScalarTraits<GR>;

namespace detail {

inline GR seeded_rational(std::uint64_t& state, long num_span = 9, long den_span = 3)
{
    long n = static_cast<long>(num::splitmix64(state) % (2 * num_span + 1)) - num_span;
    long d = 1 + static_cast<long>(num::splitmix64(state) % den_span);
    return GR(Rational(n, d));
}

inline Matrix<GR> seeded_matrix(std::size_t r, std::size_t c, std::uint64_t& state)
{
    Matrix<GR> m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = seeded_rational(state, 4, 3);
    return m;
}

inline Matrix<GR> seeded_admissible(std::size_t n, std::uint64_t& state)
{
    for (;;) {
        Matrix<GR> a = seeded_matrix(n, n, state);
        if (check_admissible(a).admissible) return a;
    }
}

inline LatticeFunction<GR> seeded_table(Window w, std::uint64_t& state)
{
    return LatticeFunction<GR>::tabulate_scalar(w, [&](LatticePoint) {
        return GR(seeded_rational(state).real(), seeded_rational(state).real());
    });
}

inline double table_gap(const LatticeFunction<GR>& a, const LatticeFunction<GR>& b)
{
    double worst = 0.0;
    Window w = a.window();
    for (int y = w.y0; y <= w.y1; ++y)
        for (int x = w.x0; x <= w.x1; ++x)
            worst = std::max(worst,
                             to_double((a.at({x, y}) - b.at({x, y})).max_abs2()));
    return std::sqrt(worst);
}

} // namespace detail

/// Residual of the degree-lowering identity on a pair of tables; the first
/// argument is the degree-n table, the second the expected difference.
/// Exposed so broken input data can be driven through the named check.
inline double si3_residual(const LatticeFunction<GR>& table_n,
                           const LatticeFunction<GR>& table_lower)
{
    auto dx = apply_difference(Difference::dx, table_n);
    double worst = 0.0;
    Window w = dx.window();
    for (int y = w.y0; y <= w.y1; ++y)
        for (int x = w.x0; x <= w.x1; ++x)
            worst = std::max(
                worst, to_double((dx.at({x, y}) - table_lower.at({x, y})).max_abs2()));
    return std::sqrt(worst);
}

// ---------------------------------------------------------------------------
// individual checks; each returns a filled CheckResult

inline CheckResult check_lattice_commute(Profile)
{
    std::uint64_t state = 0xA1;
    auto f = detail::seeded_table(Window::sized(7, 9), state);
    auto xy = apply_difference(Difference::dy, apply_difference(Difference::dx, f));
    auto yx = apply_difference(Difference::dx, apply_difference(Difference::dy, f));
    return {"lattice.commute", xy == yx, 0.0, "delta_x delta_y = delta_y delta_x"};
}

inline CheckResult check_wirtinger_commute(Profile)
{
    std::uint64_t state = 0xA2;
    auto f = detail::seeded_table(Window::sized(8, 9), state);
    auto ab = apply_difference(Difference::dbar, apply_difference(Difference::d, f));
    auto ba = apply_difference(Difference::d, apply_difference(Difference::dbar, f));
    return {"lattice.wirtinger-commute", ab == ba, 0.0, "D Dbar = Dbar D"};
}

inline CheckResult check_inversion_identity(Profile)
{
    std::uint64_t state = 0xA3;
    auto f = detail::seeded_table(Window::sized(7, 8), state);
    auto fx = apply_difference(Difference::dx, f);
    auto fy = apply_difference(Difference::dy, f);
    auto fb = apply_difference(Difference::dbar, f);
    auto dxdy = apply_difference(Difference::dx, fy);
    bool ok = true;
    Window w = fb.window();
    for (int y = w.y0; y <= w.y1 && ok; ++y)
        for (int x = w.x0; x <= w.x1 && ok; ++x) {
            LatticePoint p{x, y};
            GR lhs = f.at(p)(0, 0) + STG::alpha_minus() * fx.at(p)(0, 0) +
                     STG::alpha_plus() * fy.at(p)(0, 0) +
                     STG::alpha_minus() * STG::alpha_plus() * dxdy.at(p)(0, 0);
            GR rhs = f.at(p)(0, 0) + fb.at(p)(0, 0);
            ok = (lhs == rhs);
        }
    return {"lattice.inversion-identity", ok, 0.0,
            "(I + a- dx)(I + a+ dy) f = f + Dbar f"};
}

inline CheckResult check_closed_path(Profile profile)
{
    const std::size_t nmax = profile == Profile::quick ? 6 : 10;
    Window w = Window::sized(6, 7);
    bool ok = true;
    for (std::size_t n = 0; n <= nmax && ok; ++n) {
        auto f = basis_table<GR>(n, w);
        PathSpec cell{{{1, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 0}}};
        PathSpec rect{{{0, -2}, {1, -2}, {2, -2}, {2, -1}, {2, 0}, {1, 0}, {0, 0},
                       {0, -1}, {0, -2}}};
        ok = discrete_integral(f, cell).is_zero() && discrete_integral(f, rect).is_zero();
    }
    return {"lattice.closed-path", ok, 0.0, "closed-path integrals vanish on analytic tables"};
}

inline CheckResult check_dbar_kernel(Profile)
{
    Window w = Window::sized(6, 7);
    auto f = e_lambda_table(GR(Rational(1, 2)), w);
    bool ok = is_discrete_analytic(f, 0.0).analytic;
    auto fb = apply_difference(Difference::dbar, f);
    Window sw = fb.window();
    for (int y = sw.y0; y <= sw.y1 && ok; ++y)
        for (int x = sw.x0; x <= sw.x1 && ok; ++x) ok = fb.at({x, y})(0, 0).is_zero();
    return {"lattice.dbar-kernel", ok, 0.0, "analytic tables are annihilated by Dbar"};
}

inline CheckResult check_si3(Profile profile)
{
    const std::size_t nmax = 12;
    Window w = profile == Profile::quick ? Window::sized(8, 11) : Window::sized(12, 25);
    double worst = 0.0;
    for (std::size_t n = 1; n <= nmax; ++n) {
        auto hi = basis_table<GR>(n, w);
        Window sw{w.x0, w.x1 - 1, w.y0, w.y1};
        worst = std::max(worst, si3_residual(hi, basis_table<GR>(n - 1, sw)));
    }
    return {"basis.si3", worst == 0.0, worst, "delta_x z^(n) = z^(n-1), exact"};
}

inline CheckResult check_basis_analytic(Profile profile)
{
    Window w = profile == Profile::quick ? Window::sized(8, 11) : Window::sized(12, 25);
    bool ok = true;
    for (std::size_t n = 0; n <= 12 && ok; ++n)
        ok = is_discrete_analytic(basis_table<GR>(n, w), 0.0).analytic;
    return {"basis.analytic", ok, 0.0, "z^(n) tables satisfy the lattice equation exactly"};
}

inline CheckResult check_basis_binomial(Profile)
{
    bool ok = true;
    for (int x = 0; x <= 11 && ok; ++x) {
        Rational binom = 1;
        for (std::size_t n = 0; n <= 12 && ok; ++n) {
            if (n > 0)
                binom = binom * Rational(x - static_cast<long>(n) + 1) /
                        Rational(static_cast<long>(n));
            Rational expect = (n > static_cast<std::size_t>(x)) ? Rational(0) : binom;
            ok = (basis_poly<GR>(n, {x, 0}) == GR(expect));
        }
    }
    return {"basis.binomial", ok, 0.0, "z^(n) = C(x, n) on the real axis"};
}

inline CheckResult check_chu_vandermonde(Profile profile)
{
    const std::size_t nmax = profile == Profile::quick ? 5 : 8;
    Window w = profile == Profile::quick ? Window::sized(4, 4) : Window::sized(6, 6);
    bool ok = true;
    for (int zy = w.y0; zy <= w.y1 && ok; ++zy)
        for (int zx = w.x0; zx <= w.x1 && ok; ++zx)
            for (int wy = w.y0; wy <= w.y1 && ok; ++wy)
                for (int wx = w.x0; wx <= w.x1 && ok; ++wx) {
                    auto zs = basis_prefix<GR>(nmax, {zx, zy});
                    auto ws = basis_prefix<GR>(nmax, {wx, wy});
                    auto sum = basis_prefix<GR>(nmax, {zx + wx, zy + wy});
                    for (std::size_t n = 0; n <= nmax && ok; ++n) {
                        GR rhs;
                        for (std::size_t k = 0; k <= n; ++k) rhs += zs[k] * ws[n - k];
                        ok = (sum[n] == rhs);
                    }
                }
    return {"basis.chu-vandermonde", ok, 0.0, "(z+w)^(n) = sum_k z^(k) w^(n-k), exact"};
}

inline CheckResult check_eigen_dx(Profile)
{
    std::uint64_t state = 0xB1;
    Window w = Window::sized(5, 7);
    bool ok = true;
    int produced = 0;
    while (produced < 20 && ok) {
        GR lam = detail::seeded_rational(state);
        if (!check_admissible(Matrix<GR>{{lam}}).admissible) continue;
        ++produced;
        auto e = e_lambda_table(lam, w);
        auto de = apply_difference(Difference::dx, e);
        Window sw = de.window();
        for (int y = sw.y0; y <= sw.y1 && ok; ++y)
            for (int x = sw.x0; x <= sw.x1 && ok; ++x)
                ok = (de.at({x, y})(0, 0) == lam * e.at({x, y})(0, 0));
    }
    return {"basis.eigen-dx", ok, 0.0, "delta_x e_lambda = lambda e_lambda for seeded lambda"};
}

inline CheckResult check_eigen_dy(Profile)
{
    std::uint64_t state = 0xB2;
    Window w = Window::sized(5, 7);
    bool ok = true;
    int produced = 0;
    while (produced < 20 && ok) {
        GR mu = detail::seeded_rational(state);
        Matrix<GR> mum{{mu}};
        if (STG::is_zero(STG::one() + STG::alpha_plus() * mu)) continue;
        GR lam = mu_to_lambda(mu);
        if (!check_admissible(Matrix<GR>{{lam}}).admissible) continue;
        ++produced;
        auto e = e_lambda_table(lam, w);
        auto de = apply_difference(Difference::dy, e);
        Window sw = de.window();
        for (int y = sw.y0; y <= sw.y1 && ok; ++y)
            for (int x = sw.x0; x <= sw.x1 && ok; ++x)
                ok = (de.at({x, y})(0, 0) == mu * e.at({x, y})(0, 0));
    }
    return {"basis.eigen-dy", ok, 0.0,
            "delta_y e_lambda(mu) = mu e_lambda(mu) via the mu -> lambda map"};
}

inline CheckResult check_gene_series(Profile)
{
    using SC = ScalarTraits<CD>;
    Window w = Window::sized(4, 7);
    double worst = 0.0;
    for (CD lam : {CD(0.5, 0), CD(0.9, 0), CD(0, 0.7)}) {
        CoefficientSeries<CD> geo(1, 1, 200);
        CD p = SC::one();
        for (std::size_t n = 0; n < 200; ++n, p *= lam) geo.coeffs[n](0, 0) = p;
        for (int y = w.y0; y <= w.y1; ++y)
            for (int x = w.x0; x <= w.x1; ++x) {
                CD got = series_eval(geo, {x, y}).value(0, 0);
                worst = std::max(worst, std::abs(got - e_lambda(lam, {x, y})));
            }
    }
    return {"basis.gene-series", worst <= 1e-8, worst,
            "sum lambda^n z^(n) matches e_lambda to 1e-8 at 200 terms"};
}

inline CheckResult check_hadamard(Profile)
{
    const std::size_t n = 400;  // the 5% band needs the polynomial factor n^k/n to settle
    double worst = 0.0;
    bool ok = true;
    for (LatticePoint z : {LatticePoint{1, 1}, LatticePoint{2, -4}}) {
        auto pre = basis_prefix<CD>(n, z);
        double mag = std::pow(std::abs(pre[n]), 1.0 / static_cast<double>(n));
        double ratio = mag * std::sqrt(2.0);
        worst = std::max(worst, std::fabs(ratio - 1.0));
        ok = ok && ratio >= 0.95 && ratio <= 1.05;
    }
    // on the real axis the basis vanishes beyond the degree instead
    ok = ok && basis_poly<GR>(n, {3, 0}).is_zero();
    return {"basis.hadamard", ok, worst,
            "n-th root of |z^(n)| within 5% of 1/sqrt(2) off the real axis"};
}

inline CheckResult check_z_decay(Profile profile)
{
    const std::size_t n = profile == Profile::quick ? 200 : 400;
    Window w = Window::sized(5, 5);
    double worst = 0.0;
    for (int y = w.y0; y <= w.y1; ++y)
        for (int x = w.x0; x <= w.x1; ++x) {
            auto pre = basis_prefix<CD>(n, {x, y});
            for (std::size_t k = 200; k <= n; k += 30)
                worst = std::max(worst, std::abs(pre[k]));
        }
    return {"basis.z-decay", worst <= 1e-6, worst,
            "|Z^n 1| = |z^(n)| below 1e-6 on a 5x5 window for n >= 200"};
}

inline CheckResult check_taylor_roundtrip(Profile)
{
    std::uint64_t state = 0xB3;
    bool ok = true;
    for (int trial = 0; trial < 5 && ok; ++trial) {
        CoefficientSeries<GR> c(1, 1, 4);
        for (auto& m : c.coeffs)
            m(0, 0) = GR(detail::seeded_rational(state).real(),
                         detail::seeded_rational(state).real());
        Window w = Window::sized(6, 5);
        auto table = LatticeFunction<GR>::tabulate_scalar(w, [&](LatticePoint p) {
            return series_eval(c, p).value(0, 0);
        });
        ok = (taylor_coefficients(table, 3) == c);
    }
    return {"basis.taylor-roundtrip", ok, 0.0,
            "taylor_coefficients inverts series_eval on finite series"};
}

inline CheckResult check_h2_shift(Profile)
{
    std::uint64_t state = 0xB4;
    bool ok = true;
    for (int trial = 0; trial < 20 && ok; ++trial) {
        std::size_t len = 2 + num::splitmix64(state) % 9;
        CoefficientSeries<GR> f(1, 1, len);
        for (auto& m : f.coeffs)
            m(0, 0) = GR(detail::seeded_rational(state).real(),
                         detail::seeded_rational(state).real());
        ok = (h2_norm_sq(f.shifted_left()) == h2_norm_sq(f) - f.coeffs[0](0, 0).abs2());
    }
    return {"basis.h2-shift", ok, 0.0,
            "||delta_x f||^2 = ||f||^2 - ||f(0)||^2 exactly on finite series"};
}

inline CheckResult check_resolvent_shift(Profile)
{
    std::uint64_t state = 0xC1;
    bool ok = true;
    for (int trial = 0; trial < 4 && ok; ++trial) {
        std::size_t n = 1 + trial % 3;
        Matrix<GR> a = detail::seeded_admissible(n, state);
        auto f = resolvent_factors(a);
        ok = (resolvent_eval(a, {0, 0}) == Matrix<GR>::identity(n));
        for (LatticePoint z : {LatticePoint{1, 1}, LatticePoint{0, -2}, LatticePoint{2, 0}}) {
            if (!ok) break;
            Matrix<GR> e = resolvent_eval(a, z);
            ok = (resolvent_eval(a, {z.x + 1, z.y}) == f.horizontal * e) &&
                 (resolvent_eval(a, {z.x, z.y + 1}) == f.vertical_up * e);
        }
    }
    return {"realization.resolvent-shift", ok, 0.0,
            "e_A obeys the horizontal and vertical shift recursions"};
}

inline CheckResult check_rational_analytic(Profile)
{
    std::uint64_t state = 0xC2;
    bool ok = true;
    for (int trial = 0; trial < 3 && ok; ++trial) {
        Matrix<GR> a = detail::seeded_admissible(2, state);
        Realization<GR> r(a, detail::seeded_matrix(2, 1, state),
                          detail::seeded_matrix(1, 2, state),
                          detail::seeded_matrix(1, 1, state));
        ok = is_discrete_analytic(rational_table(r, Window::sized(6, 7)), 0.0).analytic;
    }
    return {"realization.analytic", ok, 0.0, "rational tables satisfy the lattice equation"};
}

inline CheckResult check_resolve_identity(Profile)
{
    std::uint64_t state = 0xC3;
    Window w = Window::sized(5, 7);
    bool ok = true;
    for (int trial = 0; trial < 10 && ok; ++trial) {
        std::size_t n = 1 + trial % 3;
        Matrix<GR> a = detail::seeded_admissible(n, state);
        auto table = LatticeFunction<GR>::tabulate(w, n, n, [&](LatticePoint p) {
            return resolvent_eval(a, p);
        });
        auto ztable = z_apply(table);
        for (int y = w.y0; y <= w.y1 && ok; ++y)
            for (int x = w.x0; x <= w.x1 && ok; ++x)
                ok = (table.at({x, y}) - a * ztable.at({x, y}) == Matrix<GR>::identity(n));
    }
    return {"realization.resolve-identity", ok, 0.0,
            "(1 - zA) convolved with e_A is the constant identity"};
}

inline CheckResult check_spectral_series(Profile)
{
    using SC = ScalarTraits<CD>;
    std::uint64_t state = 0xC4;
    double worst = 0.0;
    for (int trial = 0; trial < 4; ++trial) {
        CD aval(1.8 * num::uniform01(state) - 0.9, 1.8 * num::uniform01(state) - 0.9);
        if (std::abs(aval) > 0.9) { --trial; continue; }
        Matrix<CD> a{{aval}};
        CoefficientSeries<CD> geo(1, 1, 220);
        CD p = SC::one();
        for (std::size_t k = 0; k < 220; ++k, p *= aval) geo.coeffs[k](0, 0) = p;
        for (LatticePoint z : {LatticePoint{2, 2}, LatticePoint{3, -1}}) {
            CD series = series_eval(geo, z).value(0, 0);
            CD closed = resolvent_eval(a, z)(0, 0);
            worst = std::max(worst, std::abs(series - closed));
        }
    }
    return {"realization.spectral-series", worst <= 1e-9, worst,
            "power-series expansion of the resolvent below spectral radius 0.9"};
}

inline CheckResult check_tmap_product(Profile)
{
    std::uint64_t state = 0xC5;
    bool ok = true;
    for (int trial = 0; trial < 10 && ok; ++trial) {
        std::size_t n1 = 1 + trial % 3, n2 = 1 + (trial / 2) % 3;
        Realization<GR> r1(detail::seeded_admissible(n1, state),
                           detail::seeded_matrix(n1, 1, state),
                           detail::seeded_matrix(2, n1, state),
                           detail::seeded_matrix(2, 1, state));
        Realization<GR> r2(detail::seeded_admissible(n2, state),
                           detail::seeded_matrix(n2, 2, state),
                           detail::seeded_matrix(1, n2, state),
                           detail::seeded_matrix(1, 2, state));
        auto prod = combine(Combine::product, r2, r1);
        ok = (markov_params(prod, 7) ==
              convolve(markov_params(r2, 7), markov_params(r1, 7), 8));
    }
    return {"realization.tmap-product", ok, 0.0,
            "markov parameters of the cascade equal the coefficient convolution"};
}

inline CheckResult check_tmap_injective(Profile)
{
    // all markov parameters zero forces the zero function on a window
    Matrix<GR> a{{GR(Rational(1, 2)), GR(Rational(1, 3))},
                 {GR(Rational(0)), GR(Rational(-1, 4))}};
    Matrix<GR> b{{GR(Rational(1))}, {GR(Rational(-2))}};
    Matrix<GR> c(1, 2);  // C = 0 makes every parameter vanish
    Realization<GR> r(a, b, c, Matrix<GR>(1, 1));
    auto table = rational_table(r, Window::sized(6, 13));
    bool ok = true;
    Window w = table.window();
    for (int y = w.y0; y <= w.y1 && ok; ++y)
        for (int x = w.x0; x <= w.x1 && ok; ++x) ok = table.at({x, y}).is_zero();
    return {"realization.tmap-injective", ok, 0.0,
            "vanishing markov data gives the zero function on a 6x13 window"};
}

inline CheckResult check_odot_inverse(Profile)
{
    std::uint64_t state = 0xC6;
    bool ok = true;
    int done = 0;
    while (done < 10 && ok) {
        std::size_t n = 1 + num::splitmix64(state) % 3;
        Matrix<GR> a = detail::seeded_admissible(n, state);
        Matrix<GR> b = detail::seeded_matrix(n, 2, state);
        Matrix<GR> c = detail::seeded_matrix(2, n, state);
        Matrix<GR> d = detail::seeded_matrix(2, 2, state);
        if (STG::is_zero(determinant(d))) continue;
        Realization<GR> r(a, b, c, d);
        Realization<GR> rinv;
        try {
            rinv = invert(r);
        } catch (const std::domain_error&) {
            continue;
        }
        ++done;
        auto mk = markov_params(combine(Combine::product, r, rinv), 8);
        ok = (mk.coeffs[0] == Matrix<GR>::identity(2));
        for (std::size_t k = 1; k <= 8 && ok; ++k) ok = mk.coeffs[k].is_zero();
    }
    return {"realization.odot-inverse", ok, 0.0,
            "f convolved with its inverse has markov data (I, 0, ...)"};
}

inline CheckResult check_minimal_idempotent(Profile)
{
    std::uint64_t state = 0xC7;
    bool ok = true;
    for (int trial = 0; trial < 5 && ok; ++trial) {
        std::size_t n = 1 + trial % 3;
        Realization<GR> r(detail::seeded_admissible(n, state),
                          detail::seeded_matrix(n, 1, state),
                          detail::seeded_matrix(1, n, state),
                          detail::seeded_matrix(1, 1, state));
        auto first = minimal_realization(markov_params(r, 9));
        auto second = minimal_realization(markov_params(first.system, 9));
        ok = (first.degree == second.degree) &&
             (markov_params(second.system, 9) == markov_params(r, 9));
    }
    return {"realization.minimal-idempotent", ok, 0.0,
            "re-minimizing a minimal system keeps the degree"};
}

inline CheckResult check_kernel_degree(Profile profile)
{
    const int span = profile == Profile::quick ? 3 : 6;
    bool ok = true;
    for (int u = 0; u <= span && ok; ++u)
        for (int v = -span; v <= span && ok; ++v) {
            auto kr = kernel_realization<GR>({u, v});
            std::size_t expect = static_cast<std::size_t>(u + std::abs(v));
            auto minimal = minimal_realization(markov_params(kr, 2 * expect + 1));
            ok = (minimal.degree == expect);
        }
    return {"realization.kernel-degree", ok, 0.0,
            "reproducing-kernel realizations have degree Re w + |Im w|"};
}

inline CheckResult check_annihilator(Profile)
{
    std::uint64_t state = 0xC8;
    bool ok = true;
    for (int trial = 0; trial < 5 && ok; ++trial) {
        std::size_t n = 1 + trial % 3;
        Realization<GR> r(detail::seeded_admissible(n, state),
                          detail::seeded_matrix(n, 1, state),
                          detail::seeded_matrix(1, n, state),
                          detail::seeded_matrix(1, 1, state));
        auto p = annihilating_polynomial(r);
        auto conv = convolve(p, markov_params(r, 12), 13);
        for (std::size_t k = n + 1; k < conv.length() && ok; ++k)
            ok = conv.coeffs[k].is_zero();
    }
    return {"realization.annihilator", ok, 0.0,
            "det(I - tA) coefficients annihilate the markov tail"};
}

inline CheckResult check_backward_shift_rank(Profile)
{
    std::uint64_t state = 0xC9;
    bool ok = true;
    int done = 0;
    while (done < 10 && ok) {
        std::size_t n = 1 + num::splitmix64(state) % 4;
        // diagonal system with distinct eigenvalues and full B, C: minimal
        Matrix<CD> a(n, n), b(n, 1), c(1, n);
        for (std::size_t k = 0; k < n; ++k) {
            a(k, k) = CD(1.2 * num::uniform01(state) - 0.6, 1.2 * num::uniform01(state) - 0.6);
            b(k, 0) = CD(0.5 + num::uniform01(state), 0);
            c(0, k) = CD(0.5 + num::uniform01(state), num::uniform01(state));
        }
        bool distinct = true;
        for (std::size_t i = 0; i < n && distinct; ++i)
            for (std::size_t j = i + 1; j < n && distinct; ++j)
                distinct = std::abs(a(i, i) - a(j, j)) > 0.05;
        if (!distinct || !check_admissible(a).admissible) continue;
        ++done;
        Realization<CD> r(a, b, c, Matrix<CD>(1, 1));
        auto table = rational_table(r, Window::sized(12, 7));
        ok = (backward_shift_rank(table, n + 3, 1e-8) == n);
    }
    return {"realization.backward-shift-rank", ok, 0.0,
            "sampled difference span recovers the minimal state dimension"};
}

inline CheckResult check_adjoint_resolvent(Profile)
{
    std::uint64_t state = 0xD1;
    bool ok = true;
    for (int trial = 0; trial < 3 && ok; ++trial) {
        Matrix<GR> a = detail::seeded_matrix(2, 2, state);
        // scale down to keep it comfortably admissible
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j) a(i, j) = a(i, j) * GR(Rational(1, 4));
        if (!check_admissible(a).admissible) continue;
        Matrix<GR> astar = a.adjoint();
        Window w = Window::sized(5, 9);
        for (int y = w.y0; y <= w.y1 && ok; ++y)
            for (int x = w.x0; x <= w.x1 && ok; ++x)
                ok = (resolvent_eval(a, {x, y}).adjoint() == resolvent_eval(astar, {x, -y}));
    }
    return {"schur.adjoint-resolvent", ok, 0.0, "(e_A(w))* = e_{A*}(conj w), exact"};
}

inline CheckResult check_kernel_hermitian(Profile)
{
    auto rc = random_coisometry(4, 2, 3, 0xD2);
    double worst = 0.0;
    for (LatticePoint z : {LatticePoint{1, 2}, LatticePoint{3, -1}, LatticePoint{0, 0}})
        for (LatticePoint w : {LatticePoint{0, 1}, LatticePoint{2, 2}}) {
            auto gap = kernel_closed(rc, z, w).adjoint() - kernel_closed(rc, w, z);
            worst = std::max(worst, std::sqrt(gap.frobenius_sq()));
        }
    return {"schur.kernel-hermitian", worst <= 1e-13, worst,
            "K(z,w)* = K(w,z) for the closed kernel"};
}

inline CheckResult check_kernel_agreement(Profile profile)
{
    const int count = profile == Profile::quick ? 8 : 50;
    const std::size_t terms = profile == Profile::quick ? 200 : 300;
    double worst = 0.0;
    for (int k = 0; k < count; ++k) {
        std::uint64_t seed = 1000 + k;
        std::uint64_t state = seed;
        std::size_t n = num::splitmix64(state) % 5;
        auto rc = random_coisometry(n, 2, 2, seed);
        LatticePoint z{1 + static_cast<int>(num::splitmix64(state) % 3),
                       static_cast<int>(num::splitmix64(state) % 4) - 1};
        LatticePoint w{static_cast<int>(num::splitmix64(state) % 3),
                       static_cast<int>(num::splitmix64(state) % 3) - 1};
        auto series = kernel_series(rc, z, w, terms, 1e-6, 160);
        auto closed = kernel_closed(rc, z, w);
        worst = std::max(worst, std::sqrt((series.value - closed).frobenius_sq()));
    }
    return {"schur.kernel-agreement", worst <= 1e-6, worst,
            "series kernel matches the closed form on seeded colligations"};
}

inline CheckResult check_schur_telescoping(Profile)
{
    auto rc = random_coisometry(3, 2, 2, 0xD3);
    LatticePoint z{2, 1}, w{1, -1};
    double worst = 0.0;
    std::size_t prev_terms = 25;
    auto prev = kernel_series(rc, z, w, prev_terms, 1e-9, 200);
    auto closed = kernel_closed(rc, z, w);
    double prev_gap = std::sqrt((prev.value - closed).frobenius_sq());
    for (std::size_t terms : {std::size_t(50), std::size_t(100), std::size_t(200)}) {
        auto cur = kernel_series(rc, z, w, terms, 1e-9, 200);
        double gap = std::sqrt((cur.value - closed).frobenius_sq());
        worst = std::max(worst, gap > prev_gap + 1e-8 ? gap - prev_gap : 0.0);
        prev_gap = gap;
    }
    return {"schur.telescoping", worst == 0.0 && prev_gap <= 1e-8, prev_gap,
            "kernel partial sums close on the limit monotonically"};
}

inline CheckResult check_gram_psd(Profile profile)
{
    const int count = profile == Profile::quick ? 10 : 50;
    std::vector<LatticePoint> pts;
    for (int k = 0; k < 30; ++k) pts.push_back({k % 6, (k / 6) % 11 - 5});
    double worst = 0.0;
    bool ok = true;
    for (int k = 0; k < count && ok; ++k) {
        std::uint64_t seed = 2000 + k;
        std::uint64_t state = seed;
        std::size_t n = num::splitmix64(state) % 9;
        std::size_t m = 1 + num::splitmix64(state) % 3;
        std::size_t p = m + num::splitmix64(state) % (4 - m);
        auto rc = random_coisometry(n, m, p, seed);
        auto rep = gram_psd(rc, pts, 1e-9);
        worst = std::min(worst, rep.min_eig);
        ok = rep.psd;
    }
    return {"schur.gram-psd", ok, std::fabs(worst),
            "kernel Gram matrices stay positive on 30 window points"};
}

inline CheckResult check_multiplier_contraction(Profile profile)
{
    const int count = profile == Profile::quick ? 10 : 50;
    double worst = 0.0;
    for (int k = 0; k < count; ++k) {
        std::uint64_t seed = 3000 + k;
        std::uint64_t state = seed;
        std::size_t n = num::splitmix64(state) % 6;
        std::size_t m = 1 + num::splitmix64(state) % 3;
        std::size_t p = m + num::splitmix64(state) % (4 - m);
        auto rc = random_coisometry(n, m, p, seed);
        worst = std::max(worst, multiplier_contraction(rc, 64).opnorm);
    }
    return {"schur.multiplier-contraction", worst <= 1.0 + 1e-9, worst,
            "finite multiplier sections have norm at most 1 (+1e-9)"};
}

inline CheckResult check_dbr_coefficients(Profile)
{
    std::uint64_t state = 0xD4;
    Matrix<CD> a(3, 3), c(2, 3);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) a(i, j) = num::random_unit_complex(state);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 3; ++j) c(i, j) = num::random_unit_complex(state);
    Matrix<CD> stack = vstack(a, c);
    double nrm = num::spectral_norm(stack);
    a = CD(0.85 / nrm, 0) * a;
    c = CD(0.85 / nrm, 0) * c;
    auto cg = defect_completion(a, c);

    const std::size_t n_sec = 200;
    LatticePoint w{2, 1};
    Matrix<CD> alpha(2, 1);
    alpha(0, 0) = CD(0.7, -0.2);
    alpha(1, 0) = CD(-0.1, 0.4);

    auto bw = basis_prefix<CD>(n_sec, w);
    Matrix<CD> khat(n_sec * 2, 1), ghat(n_sec * 2, 1);
    Matrix<CD> fw_star = resolvent_eval(cg.A, w).adjoint() * cg.C.adjoint();
    Matrix<CD> an = Matrix<CD>::identity(cg.state_dim());
    for (std::size_t n = 0; n < n_sec; ++n) {
        Matrix<CD> block = cg.C * an * fw_star * alpha;
        for (std::size_t i = 0; i < 2; ++i) {
            khat(n * 2 + i, 0) = std::conj(bw[n]) * alpha(i, 0);
            ghat(n * 2 + i, 0) = block(i, 0);
        }
        an = an * cg.A;
    }
    Matrix<CD> t = multiplier_section(cg, n_sec);
    Matrix<CD> rhs = khat - t * (t.adjoint() * khat);
    double gap = std::sqrt((ghat - rhs).frobenius_sq());
    return {"schur.dbr-coefficients", gap <= 1e-6, gap,
            "K^S(., w) coefficients equal (I - TT*) applied to K(., w) coefficients"};
}

inline CheckResult check_mesh_limit(Profile)
{
    bool ok = true;
    double observed_c = 0.0;
    for (std::size_t n = 2; n <= 8 && ok; ++n)
        for (long xi = 1; xi <= 3 && ok; ++xi) {
            Rational x(xi);
            Rational limit = 1;
            for (std::size_t j = 0; j < n; ++j) limit *= x;
            for (std::size_t j = 2; j <= n; ++j) limit /= static_cast<long>(j);
            Rational prev_err = -1;
            bool prev_nonzero = false;
            for (int k = 0; k <= 6; ++k) {
                Rational h(1, 1L << k);
                GR val = mesh::basis_poly_h<GR>(n, {mesh::mesh_index(x, h), 0, h});
                Rational err = abs(val.real() - limit);
                if (prev_err >= 0) {
                    ok = ok && err <= prev_err;
                    if (prev_nonzero) ok = ok && err < prev_err;
                }
                observed_c = std::max(observed_c, to_double(err / h));
                prev_err = err;
                prev_nonzero = (val.real() != 0);
            }
        }
    return {"mesh.limit-basis", ok, observed_c,
            "x_h^(n) -> x^n/n! monotonically; residual shows the observed C in err <= C h"};
}

inline CheckResult check_mesh_limit_complex(Profile)
{
    bool ok = true;
    const CD zc(1.0, 1.0);
    for (std::size_t n : {std::size_t(2), std::size_t(3), std::size_t(5)}) {
        CD limit = 1;
        for (std::size_t j = 0; j < n; ++j) limit *= zc;
        for (std::size_t j = 2; j <= n; ++j) limit /= static_cast<double>(j);
        double prev = -1;
        for (int k = 0; k <= 6; ++k) {
            long scale = 1L << k;
            GR val = mesh::basis_poly_h<GR>(n, {scale, scale, Rational(1, scale)});
            double err = std::abs(val.to_complex() - limit);
            if (prev >= 0) ok = ok && err < prev;
            prev = err;
        }
    }
    return {"mesh.limit-basis-complex", ok, 0.0,
            "z_h^(n) -> z^n/n! along the ladder at z = 1+i"};
}

inline CheckResult check_mesh_shift_inverse(Profile)
{
    Rational h(1, 4);
    Window w = Window::sized(5, 5);
    mesh::MeshFunction<GR> f{h, LatticeFunction<GR>::tabulate_scalar(w, [&](LatticePoint p) {
                                 return mesh::basis_poly_h<GR>(3, {p.x, p.y, h});
                             })};
    auto round = mesh::delta_x_h(mesh::z_h(f));
    bool ok = true;
    Window sw = round.samples.window();
    for (int y = sw.y0; y <= sw.y1 && ok; ++y)
        for (int x = sw.x0; x <= sw.x1 && ok; ++x)
            ok = (round.samples.at({x, y}) == f.samples.at({x, y}));
    return {"mesh.shift-inverse", ok, 0.0, "delta_{x,h} Z_h = identity, exact"};
}

inline CheckResult check_mesh_adjoint_shift(Profile)
{
    std::uint64_t state = 0xE1;
    bool ok = true;
    for (int trial = 0; trial < 5 && ok; ++trial) {
        std::vector<GR> fc, gc;
        for (int k = 0; k < 20; ++k) {
            fc.push_back(GR(detail::seeded_rational(state).real(),
                            detail::seeded_rational(state).real()));
            gc.push_back(GR(detail::seeded_rational(state).real(),
                            detail::seeded_rational(state).real()));
        }
        GR a, b;
        for (int k = 0; k < 19; ++k) a += fc[k + 1] * gc[k].conj();
        for (int k = 1; k < 20; ++k) b += fc[k] * gc[k - 1].conj();
        ok = (a == b);
    }
    return {"mesh.adjoint-shift", ok, 0.0,
            "<delta_{x,h} f, g> = <f, Z_h g> in the coefficient inner product"};
}

inline CheckResult check_mesh_analytic(Profile)
{
    Rational h(1, 8);
    Window w = Window::sized(5, 5);
    bool ok = true;
    for (std::size_t n = 0; n <= 5 && ok; ++n) {
        auto table = LatticeFunction<GR>::tabulate_scalar(w, [&](LatticePoint p) {
            return mesh::basis_poly_h<GR>(n, {p.x, p.y, h});
        });
        ok = is_discrete_analytic(table, 0.0).analytic;
    }
    return {"mesh.analytic", ok, 0.0, "scaled basis tables satisfy the mesh lattice equation"};
}

inline CheckResult check_adjoint_456(Profile profile)
{
    const std::size_t span = profile == Profile::quick ? 10 : 20;
    bool ok = true;
    for (std::size_t n = 0; n <= span && ok; ++n)
        for (std::size_t m = 0; m <= span && ok; ++m)
            ok = mesh::adjoint_identity_check(n, m).equal;
    return {"mesh.adjoint-456", ok, 0.0,
            "monomial adjoint identity in the limit kernel space, exact"};
}

inline CheckResult check_mesh_kernel_limit(Profile)
{
    const std::size_t terms = 60;
    auto lim = mesh::limit_kernel<GR>(GR(1), GR(1), terms);
    Rational prev = -1;
    bool ok = true;
    for (int k = 0; k <= 6 && ok; ++k) {
        Rational h(1, 1L << k);
        mesh::MeshPoint one{mesh::mesh_index(Rational(1), h), 0, h};
        auto kh = mesh::kernel_h<GR>(one, one, terms);
        Rational gap = abs(kh.value.real() - lim.value.real());
        if (prev >= 0) ok = gap < prev;
        prev = gap;
    }
    return {"mesh.kernel-limit", ok, to_double(prev),
            "K_h(1,1) approaches the limit kernel along the mesh ladder"};
}

/// The full registry in fixed output order.
inline std::vector<CheckResult> run_all(Profile profile)
{
    using Check = CheckResult (*)(Profile);
    static const Check checks[] = {
        check_lattice_commute,
        check_wirtinger_commute,
        check_inversion_identity,
        check_closed_path,
        check_dbar_kernel,
        check_si3,
        check_basis_analytic,
        check_basis_binomial,
        check_chu_vandermonde,
        check_eigen_dx,
        check_eigen_dy,
        check_gene_series,
        check_hadamard,
        check_z_decay,
        check_taylor_roundtrip,
        check_h2_shift,
        check_resolvent_shift,
        check_rational_analytic,
        check_resolve_identity,
        check_spectral_series,
        check_tmap_product,
        check_tmap_injective,
        check_odot_inverse,
        check_minimal_idempotent,
        check_kernel_degree,
        check_annihilator,
        check_backward_shift_rank,
        check_adjoint_resolvent,
        check_kernel_hermitian,
        check_kernel_agreement,
        check_schur_telescoping,
        check_gram_psd,
        check_multiplier_contraction,
        check_dbr_coefficients,
        check_mesh_limit,
        check_mesh_limit_complex,
        check_mesh_shift_inverse,
        check_mesh_adjoint_shift,
        check_mesh_analytic,
        check_adjoint_456,
        check_mesh_kernel_limit,
    };
    std::vector<CheckResult> out;
    out.reserve(std::size(checks));
    for (auto check : checks) out.push_back(check(profile));
    return out;
}

} // namespace verify
} // namespace dalat
