#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "dalat/schur.hpp"

using namespace dalat;

using GR = GaussianRational;
using CD = std::complex<double>;
using MC = Matrix<CD>;
using MG = Matrix<GR>;

static GR gr(long p, long q = 1) { return GR(Rational(p, q)); }

static Colligation<GR> shift_colligation()
{
    // [[0,1],[1,0]]: S(z) = z
    return Colligation<GR>(MG{{gr(0)}}, MG{{gr(1)}}, MG{{gr(1)}}, MG{{gr(0)}});
}

static MC random_complex(std::size_t r, std::size_t c, std::uint64_t seed)
{
    std::uint64_t state = seed;
    MC m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = num::random_unit_complex(state);
    return m;
}

TEST_CASE("coisometry detection")
{
    CHECK(is_coisometry(MG::identity(3), 0.0).coisometric);

    auto perm = is_coisometry(MG{{gr(0), gr(1)}, {gr(1), gr(0)}}, 0.0);
    CHECK(perm.coisometric);
    CHECK(perm.defect_norm < 1e-12);

    auto bad = is_coisometry(MG{{gr(1), gr(1)}, {gr(0), gr(1)}}, 0.0);
    CHECK_FALSE(bad.coisometric);
    CHECK(bad.defect_norm > 0.5);
}

TEST_CASE("seeded random coisometries")
{
    // n = 0: a single row of unit norm
    auto flat = random_coisometry(0, 1, 1, 3);
    CHECK(std::abs(std::abs(flat.D(0, 0)) - 1.0) < 1e-12);

    auto small = random_coisometry(1, 1, 1, 7);
    CHECK(is_coisometry(small.block(), 1e-12).coisometric);
    CHECK(small.seed.value() == 7);

    auto big = random_coisometry(4, 2, 3, 1);
    CHECK(big.block().rows() == 6);
    CHECK(big.block().cols() == 7);
    CHECK(is_coisometry(big.block(), 1e-12).coisometric);

    // determinism per seed
    auto again = random_coisometry(4, 2, 3, 1);
    CHECK(again.block() == big.block());

    CHECK_THROWS_AS(random_coisometry(2, 3, 1, 5), std::domain_error);
}

TEST_CASE("schur function of the shift colligation is z")
{
    auto cg = shift_colligation();
    auto s = schur_function(cg);
    for (LatticePoint z : {LatticePoint{0, 0}, LatticePoint{2, 1}, LatticePoint{1, -3}})
        CHECK(rational_eval(s, z)(0, 0) == GR(Rational(z.x), Rational(z.y)));

    auto coeffs = schur_coefficients(cg, 4);
    CHECK(coeffs.coeffs[0](0, 0) == gr(0));
    CHECK(coeffs.coeffs[1](0, 0) == gr(1));
    for (std::size_t k = 2; k <= 4; ++k) CHECK(coeffs.coeffs[k](0, 0) == gr(0));
}

TEST_CASE("adjoint of the resolvent conjugates the point")
{
    // (e_A(w))* = e_{A*}(conj w), exactly, for rational A
    MG a{{gr(1, 2), gr(1, 3)}, {GR(Rational(0), Rational(-1, 4)), gr(1, 5)}};
    REQUIRE(check_admissible(a).admissible);
    MG astar = a.adjoint();
    Window w = Window::sized(5, 9);
    for (int y = w.y0; y <= w.y1; ++y)
        for (int x = w.x0; x <= w.x1; ++x) {
            MG lhs = resolvent_eval(a, {x, y}).adjoint();
            MG rhs = resolvent_eval(astar, {x, -y});
            REQUIRE(lhs == rhs);
        }
}

TEST_CASE("closed kernel values")
{
    auto cg = shift_colligation();
    for (LatticePoint z : {LatticePoint{0, 0}, LatticePoint{3, 1}, LatticePoint{2, -2}})
        for (LatticePoint w : {LatticePoint{1, 0}, LatticePoint{0, 2}})
            CHECK(kernel_closed(cg, z, w)(0, 0) == gr(1));

    // no state: kernel is identically zero
    Colligation<GR> pure(MG(0, 0), MG(0, 1), MG(1, 0), MG{{gr(1)}});
    CHECK(kernel_closed(pure, {1, 1}, {2, 0})(0, 0) == gr(0));

    // K(0,0) = C C* = I - D D* for a coisometry
    auto rc = random_coisometry(3, 2, 2, 11);
    MC k00 = kernel_closed(rc, {0, 0}, {0, 0});
    MC expect = MC::identity(2) - rc.D * rc.D.adjoint();
    CHECK(std::sqrt((k00 - expect).frobenius_sq()) < 1e-12);
}

TEST_CASE("kernel Hermitian symmetry")
{
    auto rc = random_coisometry(4, 2, 3, 13);
    for (LatticePoint z : {LatticePoint{1, 2}, LatticePoint{3, -1}})
        for (LatticePoint w : {LatticePoint{0, 1}, LatticePoint{2, 2}}) {
            MC lhs = kernel_closed(rc, z, w).adjoint();
            MC rhs = kernel_closed(rc, w, z);
            CHECK(std::sqrt((lhs - rhs).frobenius_sq()) < 1e-13);
        }
}

TEST_CASE("kernel series: telescoping cases")
{
    // S(z) = z: the sum telescopes to 1 - z^(N) conj(w^(N)) exactly, which
    // is exactly 1 at real points once N passes the degree
    auto cg = shift_colligation();
    for (std::size_t n : {std::size_t(1), std::size_t(5), std::size_t(40)}) {
        LatticePoint z{2, 1}, w{1, -1};
        auto r = kernel_series(cg, z, w, n, 1e-9, 60);
        GR expect = gr(1) - basis_poly<GR>(n, z) * basis_poly<GR>(n, w).conj();
        CHECK(r.value(0, 0) == expect);
    }
    for (std::size_t n : {std::size_t(4), std::size_t(10)}) {
        auto r = kernel_series(cg, {2, 0}, {1, 0}, n, 1e-9, 60);
        CHECK(r.value(0, 0) == gr(1));
    }

    // constant S = c: kernel is (1 - |c|^2) K(z,w)
    const CD c(0.6, 0.3);
    Colligation<CD> cst(MC(0, 0), MC(0, 1), MC(1, 0), MC{{c}});
    LatticePoint z{1, 1}, w{2, 0};
    auto got = kernel_series(cst, z, w, 50, 1e-9, 0);
    auto bz = basis_prefix<CD>(50, z);
    auto bw = basis_prefix<CD>(50, w);
    CD kzw(0, 0);
    for (std::size_t n = 0; n < 50; ++n) kzw += bz[n] * std::conj(bw[n]);
    CD expect = (1.0 - std::norm(c)) * kzw;
    CHECK(std::abs(got.value(0, 0) - expect) < 1e-12);
}

TEST_CASE("kernel series agrees with the closed form")
{
    for (std::uint64_t seed : {2ULL, 3ULL, 4ULL}) {
        auto rc = random_coisometry(1 + seed % 4, 2, 2, seed);
        for (LatticePoint z : {LatticePoint{1, 1}, LatticePoint{3, -2}}) {
            LatticePoint w{2, 1};
            auto series = kernel_series(rc, z, w, 300, 1e-6, 160);
            MC closed = kernel_closed(rc, z, w);
            CHECK(series.converged);
            CHECK(std::sqrt((series.value - closed).frobenius_sq()) < 1e-6);
        }
    }
}

TEST_CASE("telescoping structure of the kernel terms")
{
    // z^(n) conj(w^(n)) I - (Z^n S)(z)(Z^n S)(w)*
    //   = (Z^n F)(z)(Z^n F)(w)* - (Z^{n+1} F)(z)(Z^{n+1} F)(w)*
    auto rc = random_coisometry(3, 2, 2, 17);
    LatticePoint z{2, 1}, w{1, -1};
    const std::size_t tail = 200;
    auto bz = basis_prefix<CD>(tail + 12, z);
    auto bw = basis_prefix<CD>(tail + 12, w);
    auto coeffs = schur_coefficients(rc, tail);

    auto zf = [&](std::size_t n, const std::vector<CD>& basis) {
        // (Z^n F) = sum_k C A^k z^(n+k)
        MC acc(rc.out_dim(), rc.state_dim());
        MC cak = rc.C;
        for (std::size_t k = 0; k <= tail; ++k) {
            acc = acc + cak * basis[n + k];
            cak = cak * rc.A;
        }
        return acc;
    };
    auto zs = [&](std::size_t n, const std::vector<CD>& basis) {
        MC acc(rc.out_dim(), rc.in_dim());
        for (std::size_t k = 0; k <= tail; ++k) acc = acc + coeffs.coeffs[k] * basis[n + k];
        return acc;
    };

    for (std::size_t n = 0; n < 10; ++n) {
        MC lhs(rc.out_dim(), rc.out_dim());
        for (std::size_t i = 0; i < rc.out_dim(); ++i)
            lhs(i, i) = bz[n] * std::conj(bw[n]);
        lhs = lhs - zs(n, bz) * zs(n, bw).adjoint();
        MC rhs = zf(n, bz) * zf(n, bw).adjoint() -
                 zf(n + 1, bz) * zf(n + 1, bw).adjoint();
        CHECK(std::sqrt((lhs - rhs).frobenius_sq()) < 1e-8);
    }
}

TEST_CASE("gram positivity")
{
    // S(z) = z: all-ones Gram, PSD with minimal eigenvalue 0
    auto cg = shift_colligation();
    std::vector<LatticePoint> pts;
    for (int k = 0; k < 10; ++k) pts.push_back({k % 4, k / 4 - 1});
    auto rep = gram_psd(cg, pts, 1e-9);
    CHECK(rep.psd);
    CHECK(std::fabs(rep.min_eig) < 1e-12);

    // no state: zero matrix is PSD
    Colligation<GR> pure(MG(0, 0), MG(0, 1), MG(1, 0), MG{{gr(1)}});
    CHECK(gram_psd(pure, pts, 1e-9).psd);

    // float coisometries stay PSD on window points
    for (std::uint64_t seed : {21ULL, 22ULL}) {
        auto rc = random_coisometry(5, 2, 3, seed);
        std::vector<LatticePoint> grid;
        for (int x = 0; x < 5; ++x)
            for (int y = -2; y <= 2; ++y) grid.push_back({x, y});
        auto g = gram_psd(rc, grid, 1e-9);
        CHECK(g.psd);
        CHECK(g.min_eig >= -1e-9);
    }

    CHECK_THROWS_AS(gram_psd(cg, {}, 1e-9), std::invalid_argument);
}

TEST_CASE("exact PSD certificate")
{
    CHECK(exact_psd(MG{{gr(2), gr(1)}, {gr(1), gr(2)}}));
    CHECK(exact_psd(MG::constant(3, 3, gr(1))));  // rank deficient PSD
    CHECK_FALSE(exact_psd(MG{{gr(1), gr(2)}, {gr(2), gr(1)}}));
    CHECK_FALSE(exact_psd(MG{{gr(0), gr(1)}, {gr(1), gr(0)}}));  // zero diagonal, nonzero off
    CHECK(exact_psd(MG(2, 2)));

    // complex Hermitian PSD: [[2, i], [-i, 2]]
    MG h{{gr(2), GR(Rational(0), Rational(1))}, {GR(Rational(0), Rational(-1)), gr(2)}};
    CHECK(exact_psd(h));
    // and a complex non-PSD: [[1, 2i], [-2i, 1]]
    MG h2{{gr(1), GR(Rational(0), Rational(2))}, {GR(Rational(0), Rational(-2)), gr(1)}};
    CHECK_FALSE(exact_psd(h2));
}

TEST_CASE("defect completion")
{
    // A = 0, C = 1: unit defect on the first input slot
    MC a0(1, 1), c1{{CD(1, 0)}};
    auto cg = defect_completion(a0, c1);
    CHECK(cg.block().rows() == 2);
    CHECK(cg.block().cols() == 3);
    CHECK(is_coisometry(cg.block(), 1e-10).coisometric);

    // A = 0, C = 0: defect is the identity
    auto cg0 = defect_completion(MC(1, 1), MC(1, 1));
    CHECK(is_coisometry(cg0.block(), 1e-12).coisometric);

    // A = 1/2, C = 1/2
    auto cgh = defect_completion(MC{{CD(0.5, 0)}}, MC{{CD(0.5, 0)}});
    CHECK(is_coisometry(cgh.block(), 1e-12).coisometric);

    // random contraction: scale [A; C] below unit norm
    MC a = random_complex(3, 3, 31), c = random_complex(2, 3, 37);
    MC stack = vstack(a, c);
    double nrm = num::spectral_norm(stack);
    a = CD(0.9 / nrm, 0) * a;
    c = CD(0.9 / nrm, 0) * c;
    auto cgr = defect_completion(a, c);
    CHECK(is_coisometry(cgr.block(), 1e-10).coisometric);

    // non-contraction is rejected
    CHECK_THROWS_AS(defect_completion(MC{{CD(2, 0)}}, MC{{CD(0, 0)}}), std::domain_error);
}

TEST_CASE("multiplier contraction")
{
    // constant S = c: the section is c I, norm |c|
    const CD c(0.3, -0.4);
    Colligation<CD> cst(MC(0, 0), MC(0, 1), MC(1, 0), MC{{c}});
    auto rep = multiplier_contraction(cst, 8);
    CHECK(rep.contractive);
    CHECK(rep.opnorm == Catch::Approx(0.5).epsilon(1e-12));

    // S(z) = z: nilpotent shift with norm 1
    auto cg = shift_colligation();
    auto shift_rep = multiplier_contraction(cg, 16);
    CHECK(shift_rep.contractive);
    CHECK(shift_rep.opnorm == Catch::Approx(1.0).epsilon(1e-10));

    // random coisometries give contractive sections at N = 64
    for (std::uint64_t seed : {41ULL, 42ULL}) {
        auto rc = random_coisometry(1 + seed % 5, 2, 3, seed);
        auto r = multiplier_contraction(rc, 64);
        CHECK(r.opnorm <= 1.0 + 1e-9);
        CHECK(r.contractive);
    }
}

TEST_CASE("range-norm coefficient identity for kernel sections")
{
    // coefficients of K^S(., w) a equal (I - T T*) applied to the
    // coefficients of K(., w) a on a long finite section
    MC a = random_complex(3, 3, 51), c = random_complex(2, 3, 53);
    MC stack = vstack(a, c);
    double nrm = num::spectral_norm(stack);
    a = CD(0.85 / nrm, 0) * a;
    c = CD(0.85 / nrm, 0) * c;
    auto cg = defect_completion(a, c);  // coisometry with rho(A) <= 0.85

    const std::size_t n_sec = 200;
    const std::size_t m = cg.out_dim();
    LatticePoint w{2, 1};

    MC alpha(m, 1);
    alpha(0, 0) = CD(0.7, -0.2);
    alpha(1, 0) = CD(-0.1, 0.4);

    // k-hat: coefficients of K(., w) alpha are conj(w^(n)) alpha
    auto bw = basis_prefix<CD>(n_sec, w);
    MC khat(n_sec * m, 1);
    for (std::size_t n = 0; n < n_sec; ++n)
        for (std::size_t i = 0; i < m; ++i)
            khat(n * m + i, 0) = std::conj(bw[n]) * alpha(i, 0);

    // g-hat: coefficients of K^S(., w) alpha are C A^n F(w)* alpha
    MC fw_star = resolvent_eval(cg.A, w).adjoint() * cg.C.adjoint();
    MC ghat(n_sec * m, 1);
    MC an = MC::identity(cg.state_dim());
    for (std::size_t n = 0; n < n_sec; ++n) {
        MC block = cg.C * an * fw_star * alpha;
        for (std::size_t i = 0; i < m; ++i) ghat(n * m + i, 0) = block(i, 0);
        an = an * cg.A;
    }

    MC t = multiplier_section(cg, n_sec);
    MC rhs = khat - t * (t.adjoint() * khat);
    CHECK(std::sqrt((ghat - rhs).frobenius_sq()) < 1e-6);
}
