// Acceptance suite: runs each acceptance criterion at its stated tolerance
// and prints one PASS/FAIL line per criterion. Exits nonzero when any
// criterion fails.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <string>
#include <vector>

#include "dalat/dalat.hpp"

using namespace dalat;

using GR = GaussianRational;
using CD = std::complex<double>;
using STG = ScalarTraits<GR>;

namespace {

int failures = 0;

void report(int index, bool pass, const std::string& what, const std::string& detail)
{
    std::printf("[%s] C%-2d %s%s%s\n", pass ? "PASS" : "FAIL", index, what.c_str(),
                detail.empty() ? "" : " -- ", detail.c_str());
    if (!pass) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point start)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

GR seeded_rational(std::uint64_t& state, long num_span = 9, long den_span = 3)
{
    long n = static_cast<long>(num::splitmix64(state) % (2 * num_span + 1)) - num_span;
    long d = 1 + static_cast<long>(num::splitmix64(state) % den_span);
    return GR(Rational(n, d));
}

Matrix<GR> seeded_matrix(std::size_t r, std::size_t c, std::uint64_t& state)
{
    Matrix<GR> m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = seeded_rational(state, 4, 3);
    return m;
}

Matrix<GR> seeded_admissible(std::size_t n, std::uint64_t& state)
{
    for (;;) {
        Matrix<GR> a = seeded_matrix(n, n, state);
        if (check_admissible(a).admissible) return a;
    }
}

// --- criterion 1: exact basis identities on a 12x25 window, < 10 s --------

void criterion_1()
{
    auto start = std::chrono::steady_clock::now();
    Window w = Window::sized(12, 25);
    bool ok = true;
    for (std::size_t n = 0; n <= 12 && ok; ++n) {
        auto table = basis_table<GR>(n, w);
        // dbar annihilates the table
        auto db = apply_difference(Difference::dbar, table);
        Window dw = db.window();
        for (int y = dw.y0; y <= dw.y1 && ok; ++y)
            for (int x = dw.x0; x <= dw.x1 && ok; ++x) ok = db.at({x, y})(0, 0).is_zero();
        // horizontal difference lowers the degree
        if (n >= 1 && ok) {
            auto dx = apply_difference(Difference::dx, table);
            ok = (dx == basis_table<GR>(n - 1, dx.window()));
        }
        // binomial values on the real axis
        for (int x = 0; x <= w.x1 && ok; ++x) {
            Rational c = 1;
            for (std::size_t k = 1; k <= n; ++k)
                c = c * Rational(x - static_cast<long>(k) + 1) / Rational(static_cast<long>(k));
            if (n > static_cast<std::size_t>(x)) c = 0;
            ok = (table.at({x, 0})(0, 0) == GR(c));
        }
    }
    double secs = seconds_since(start);
    bool in_time = secs < 10.0;
    char buf[128];
    std::snprintf(buf, sizeof buf, "zero tolerance, %.2f s (budget 10 s)", secs);
    report(1, ok && in_time, "exact basis identities (si3, dbar, binomial), n <= 12 on 12x25",
           buf);
}

// --- criterion 2: Chu-Vandermonde, exact, n <= 8, 6x6 windows -------------

void criterion_2()
{
    Window w = Window::sized(6, 6);
    bool ok = true;
    for (int zy = w.y0; zy <= w.y1 && ok; ++zy)
        for (int zx = w.x0; zx <= w.x1 && ok; ++zx)
            for (int wy = w.y0; wy <= w.y1 && ok; ++wy)
                for (int wx = w.x0; wx <= w.x1 && ok; ++wx) {
                    auto zs = basis_prefix<GR>(8, {zx, zy});
                    auto ws = basis_prefix<GR>(8, {wx, wy});
                    auto sum = basis_prefix<GR>(8, {zx + wx, zy + wy});
                    for (std::size_t n = 0; n <= 8 && ok; ++n) {
                        GR rhs;
                        for (std::size_t k = 0; k <= n; ++k) rhs += zs[k] * ws[n - k];
                        ok = (sum[n] == rhs);
                    }
                }
    report(2, ok, "Chu-Vandermonde addition formula, n <= 8, 6x6 window, exact", "");
}

// --- criterion 3: eigenfunction laws for 20 seeded rational values --------

void criterion_3()
{
    std::uint64_t state = 0xACC3;
    Window w = Window::sized(6, 9);
    bool ok = true;
    int done = 0;
    while (done < 20 && ok) {
        GR lam = seeded_rational(state);
        if (!check_admissible(Matrix<GR>{{lam}}).admissible) continue;
        ++done;
        auto e = e_lambda_table(lam, w);
        auto de = apply_difference(Difference::dx, e);
        Window sw = de.window();
        for (int y = sw.y0; y <= sw.y1 && ok; ++y)
            for (int x = sw.x0; x <= sw.x1 && ok; ++x)
                ok = (de.at({x, y})(0, 0) == lam * e.at({x, y})(0, 0));
    }
    done = 0;
    while (done < 20 && ok) {
        GR mu = seeded_rational(state);
        if (STG::is_zero(STG::one() + STG::alpha_plus() * mu)) continue;
        GR lam = mu_to_lambda(mu);
        if (!check_admissible(Matrix<GR>{{lam}}).admissible) continue;
        ++done;
        auto e = e_lambda_table(lam, w);
        auto de = apply_difference(Difference::dy, e);
        Window sw = de.window();
        for (int y = sw.y0; y <= sw.y1 && ok; ++y)
            for (int x = sw.x0; x <= sw.x1 && ok; ++x)
                ok = (de.at({x, y})(0, 0) == mu * e.at({x, y})(0, 0));
    }
    report(3, ok, "eigenfunction laws for delta_x and delta_y, 20 seeded rationals, exact", "");
}

// --- criterion 4: generating series converges at 200 terms ----------------

void criterion_4()
{
    using SC = ScalarTraits<CD>;
    Window w = Window::sized(4, 7);
    double worst = 0.0;
    for (CD lam : {CD(0.5, 0), CD(0.9, 0), CD(0, 0.7)}) {
        CoefficientSeries<CD> geo(1, 1, 200);
        CD p = SC::one();
        for (std::size_t n = 0; n < 200; ++n, p *= lam) geo.coeffs[n](0, 0) = p;
        for (int y = w.y0; y <= w.y1; ++y)
            for (int x = w.x0; x <= w.x1; ++x)
                worst = std::max(worst, std::abs(series_eval(geo, {x, y}).value(0, 0) -
                                                 e_lambda(lam, {x, y})));
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "max |sum - e_lambda| = %.3g (tol 1e-8)", worst);
    report(4, worst <= 1e-8, "generating-series convergence on a 4x7 window", buf);
}

// --- criterion 5: Hadamard radius at n = 400 -------------------------------

void criterion_5()
{
    const std::size_t n = 400;
    const double lo = 0.95 / std::sqrt(2.0), hi = 1.05 / std::sqrt(2.0);
    bool ok = true;
    std::string detail;
    for (LatticePoint z : {LatticePoint{1, 1}, LatticePoint{3, 0}, LatticePoint{2, -4}}) {
        auto pre = basis_prefix<CD>(n, z);
        double mag = std::pow(std::abs(pre[n]), 1.0 / static_cast<double>(n));
        bool here = (mag >= lo && mag <= hi);
        ok = ok && here;
        char buf[96];
        std::snprintf(buf, sizeof buf, "%s|z^(400)|^(1/400)@%s = %.6f", detail.empty() ? "" : "; ",
                      to_string(z).c_str(), mag);
        detail += buf;
    }
    detail += " (band [0.6717, 0.7425]; the z=3 value is identically 0: basis values on the"
              " real axis are binomial and vanish beyond the degree, so this leg cannot pass)";
    report(5, ok, "Hadamard radius within 5% of 1/sqrt(2) at n = 400", detail);
}

// --- criterion 6: resolvent identity and spectral-radius expansion ---------

void criterion_6()
{
    std::uint64_t state = 0xACC6;
    Window w = Window::sized(5, 7);
    bool ok = true;
    for (int trial = 0; trial < 10 && ok; ++trial) {
        std::size_t n = 1 + trial % 3;
        Matrix<GR> a = seeded_admissible(n, state);
        auto table = LatticeFunction<GR>::tabulate(w, n, n, [&](LatticePoint p) {
            return resolvent_eval(a, p);
        });
        auto ztable = z_apply(table);
        for (int y = w.y0; y <= w.y1 && ok; ++y)
            for (int x = w.x0; x <= w.x1 && ok; ++x)
                ok = (table.at({x, y}) - a * ztable.at({x, y}) == Matrix<GR>::identity(n));
    }

    // series route for rho(A) <= 0.9
    using SC = ScalarTraits<CD>;
    double worst = 0.0;
    std::uint64_t fstate = 0xACC6F;
    for (int trial = 0; trial < 6; ++trial) {
        CD aval(1.8 * num::uniform01(fstate) - 0.9, 1.8 * num::uniform01(fstate) - 0.9);
        if (std::abs(aval) > 0.9) { --trial; continue; }
        Matrix<CD> a{{aval}};
        CoefficientSeries<CD> geo(1, 1, 240);
        CD p = SC::one();
        for (std::size_t k = 0; k < 240; ++k, p *= aval) geo.coeffs[k](0, 0) = p;
        for (LatticePoint z : {LatticePoint{2, 2}, LatticePoint{3, -2}})
            worst = std::max(worst, std::abs(series_eval(geo, z).value(0, 0) -
                                             resolvent_eval(a, z)(0, 0)));
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "series gap %.3g (tol 1e-9)", worst);
    report(6, ok && worst <= 1e-9,
           "(1 - zA) o e_A = I exactly (10 seeded A, n <= 3); series expansion matches", buf);
}

// --- criterion 7: transfer map is multiplicative ---------------------------

void criterion_7()
{
    std::uint64_t state = 0xACC7;
    bool ok = true;
    for (int trial = 0; trial < 10 && ok; ++trial) {
        std::size_t n1 = 1 + trial % 3, n2 = 1 + (trial / 2) % 3;
        Realization<GR> r1(seeded_admissible(n1, state), seeded_matrix(n1, 1, state),
                           seeded_matrix(2, n1, state), seeded_matrix(2, 1, state));
        Realization<GR> r2(seeded_admissible(n2, state), seeded_matrix(n2, 2, state),
                           seeded_matrix(1, n2, state), seeded_matrix(1, 2, state));
        auto prod = combine(Combine::product, r2, r1);
        ok = (markov_params(prod, 8) ==
              convolve(markov_params(r2, 8), markov_params(r1, 8), 9));
    }
    report(7, ok, "T(f2 o f1) = T f2 . T f1 via exact markov convolution, 10 seeded pairs", "");
}

// --- criterion 8: convolution inverses --------------------------------------

void criterion_8()
{
    std::uint64_t state = 0xACC8;
    bool ok = true;
    int done = 0;
    while (done < 10 && ok) {
        std::size_t n = 1 + num::splitmix64(state) % 3;
        Matrix<GR> a = seeded_admissible(n, state);
        Matrix<GR> b = seeded_matrix(n, 2, state);
        Matrix<GR> c = seeded_matrix(2, n, state);
        Matrix<GR> d = seeded_matrix(2, 2, state);
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
    report(8, ok, "markov data of f o f^{-o} is (I, 0 x 8), 10 seeded systems, exact", "");
}

// --- criterion 9: kernel degrees over the 7 x 13 rectangle, < 60 s ---------

void criterion_9()
{
    auto start = std::chrono::steady_clock::now();
    bool ok = true;
    int count = 0;
    for (int u = 0; u <= 6 && ok; ++u)
        for (int v = -6; v <= 6 && ok; ++v) {
            auto kr = kernel_realization<GR>({u, v});
            std::size_t expect = static_cast<std::size_t>(u + std::abs(v));
            auto minimal = minimal_realization(markov_params(kr, 2 * expect + 1));
            ok = (minimal.degree == expect);
            ++count;
        }
    double secs = seconds_since(start);
    char buf[96];
    std::snprintf(buf, sizeof buf, "%d points (covers the 84), %.2f s (budget 60 s)", count,
                  secs);
    report(9, ok && secs < 60.0,
           "kernel realization degree = Re w + |Im w|, exact rank, all |Re| <= 6, |Im| <= 6",
           buf);
}

// --- criterion 10: coisometries give positive kernels ----------------------

void criterion_10()
{
    std::vector<LatticePoint> pts;
    for (int k = 0; k < 30; ++k) pts.push_back({k % 6, (k / 6) % 11 - 5});
    double worst_eig = 0.0, worst_gap = 0.0;
    bool ok = true;
    for (int k = 0; k < 50 && ok; ++k) {
        std::uint64_t seed = 0xACC * 100 + k;
        std::uint64_t state = seed;
        std::size_t n = num::splitmix64(state) % 9;
        std::size_t m = 1 + num::splitmix64(state) % 3;
        std::size_t p = m + num::splitmix64(state) % (4 - m);
        auto cg = random_coisometry(n, m, p, seed);
        auto gram = gram_psd(cg, pts, 1e-9);
        worst_eig = std::min(worst_eig, gram.min_eig);
        ok = gram.min_eig >= -1e-9;

        LatticePoint z{1 + static_cast<int>(num::splitmix64(state) % 3),
                       static_cast<int>(num::splitmix64(state) % 5) - 2};
        LatticePoint w{static_cast<int>(num::splitmix64(state) % 4),
                       static_cast<int>(num::splitmix64(state) % 5) - 2};
        auto series = kernel_series(cg, z, w, 300, 1e-6, 160);
        double gap = std::sqrt((series.value - kernel_closed(cg, z, w)).frobenius_sq());
        worst_gap = std::max(worst_gap, gap);
        ok = ok && gap <= 1e-6;
    }
    char buf[128];
    std::snprintf(buf, sizeof buf, "min eig %.3g (tol -1e-9), kernel gap %.3g (tol 1e-6)",
                  worst_eig, worst_gap);
    report(10, ok, "50 seeded colligations: Gram PSD on 30 points, series vs closed kernel",
           buf);
}

// --- criterion 11: Hardy shift identity -------------------------------------

void criterion_11()
{
    std::uint64_t state = 0xACCB;
    bool ok = true;
    for (int trial = 0; trial < 20 && ok; ++trial) {
        std::size_t len = 2 + num::splitmix64(state) % 10;
        CoefficientSeries<GR> f(1, 1, len);
        for (auto& m : f.coeffs)
            m(0, 0) = GR(seeded_rational(state).real(), seeded_rational(state).real());
        ok = (h2_norm_sq(f.shifted_left()) == h2_norm_sq(f) - f.coeffs[0](0, 0).abs2());
    }
    report(11, ok, "||delta_x f||^2 = ||f||^2 - ||f(0)||^2, 20 seeded finite series, exact",
           "");
}

// --- criterion 12: multiplier finite sections are contractions --------------

void criterion_12()
{
    double worst = 0.0;
    for (int k = 0; k < 50; ++k) {
        std::uint64_t seed = 0xACD * 100 + k;
        std::uint64_t state = seed;
        std::size_t n = num::splitmix64(state) % 9;
        std::size_t m = 1 + num::splitmix64(state) % 3;
        std::size_t p = m + num::splitmix64(state) % (4 - m);
        auto cg = random_coisometry(n, m, p, seed);
        worst = std::max(worst, multiplier_contraction(cg, 64).opnorm);
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "max opnorm %.12f (bound 1 + 1e-9)", worst);
    report(12, worst <= 1.0 + 1e-9, "finite multiplier sections at N = 64, 50 seeded", buf);
}

// --- criterion 13: mesh limits ----------------------------------------------

void criterion_13()
{
    bool ok = true;
    // ladder of |x_h^(n) - x^n/n!|: non-increasing, strict once nonzero
    // (the value vanishes exactly while x/h <= n-1, giving equal plateau
    //  steps; n <= 1 is identically zero)
    for (std::size_t n = 0; n <= 8 && ok; ++n)
        for (long xi = 1; xi <= 3 && ok; ++xi) {
            Rational x(xi);
            Rational limit = 1;
            for (std::size_t j = 0; j < n; ++j) limit *= x;
            for (std::size_t j = 2; j <= n; ++j) limit /= static_cast<long>(j);
            Rational prev_err = -1;
            bool prev_nonzero = false;
            for (int k = 0; k <= 6 && ok; ++k) {
                Rational h(1, 1L << k);
                GR val = mesh::basis_poly_h<GR>(n, {mesh::mesh_index(x, h), 0, h});
                Rational err = abs(val.real() - limit);
                if (n <= 1) {
                    ok = (err == 0);
                } else if (prev_err >= 0) {
                    ok = (err <= prev_err) && (!prev_nonzero || err < prev_err);
                }
                prev_err = err;
                prev_nonzero = (val.real() != 0);
            }
        }

    // adjoint identity, exact integers, n, m <= 10
    for (std::size_t n = 0; n <= 10 && ok; ++n)
        for (std::size_t m = 0; m <= 10 && ok; ++m)
            ok = mesh::adjoint_identity_check(n, m).equal;

    // kernel ladder at (1,1)
    const std::size_t terms = 60;
    auto lim = mesh::limit_kernel<GR>(GR(1), GR(1), terms);
    Rational prev = -1;
    for (int k = 0; k <= 6 && ok; ++k) {
        Rational h(1, 1L << k);
        mesh::MeshPoint one{mesh::mesh_index(Rational(1), h), 0, h};
        auto kh = mesh::kernel_h<GR>(one, one, terms);
        Rational gap = abs(kh.value.real() - lim.value.real());
        if (prev >= 0) ok = ok && gap < prev;
        prev = gap;
    }
    report(13, ok,
           "mesh limits: basis ladder monotone (strict off the vanishing plateau), "
           "adjoint identity n,m <= 10 exact, kernel ladder decreasing",
           "");
}

// --- criterion 14: backward-shift rank recovers the state dimension ---------

void criterion_14()
{
    std::uint64_t state = 0xACCE;
    bool ok = true;
    int done = 0;
    while (done < 10 && ok) {
        std::size_t n = 1 + num::splitmix64(state) % 4;
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
    report(14, ok, "backward-shift rank equals minimal state dim, 10 seeded systems, tol 1e-8",
           "");
}

} // namespace

// Runs all criteria by default; a single argument "C1".."C14" runs one
// criterion (used by the per-criterion ctest entries). Exit code is the
// number of failed criteria. C5 is expected to fail on its z = 3 leg: the
// basis values on the real axis are binomial and vanish beyond the degree,
// so no implementation can place |z^(400)(3)|^(1/400) near 1/sqrt(2).
int main(int argc, char** argv)
{
    using Criterion = void (*)();
    static const Criterion criteria[] = {
        criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
        criterion_6, criterion_7, criterion_8, criterion_9, criterion_10,
        criterion_11, criterion_12, criterion_13, criterion_14,
    };

    if (argc > 1) {
        std::string arg = argv[1];
        if (arg.size() < 2 || (arg[0] != 'C' && arg[0] != 'c')) {
            std::fprintf(stderr, "usage: %s [C1..C14]\n", argv[0]);
            return 2;
        }
        int index = std::atoi(arg.c_str() + 1);
        if (index < 1 || index > 14) {
            std::fprintf(stderr, "usage: %s [C1..C14]\n", argv[0]);
            return 2;
        }
        criteria[index - 1]();
        return failures == 0 ? 0 : 1;
    }

    for (Criterion c : criteria) c();
    if (failures == 0)
        std::printf("acceptance: all criteria passed\n");
    else
        std::printf("acceptance: %d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
