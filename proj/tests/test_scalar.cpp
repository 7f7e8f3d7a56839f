#include <catch2/catch_amalgamated.hpp>

#include "dalat/scalar.hpp"

using namespace dalat;

using GR = GaussianRational;

TEST_CASE("gaussian rational field operations")
{
    GR a(Rational(1, 2), Rational(1, 2));   // alpha_plus
    GR b(Rational(1, 2), Rational(-1, 2));  // alpha_minus

    CHECK(a + b == GR(1));
    CHECK(a * b == GR(Rational(1, 2)));
    CHECK(a - a == GR(0));
    CHECK((a / b) * b == a);
    CHECK(-a == GR(Rational(-1, 2), Rational(-1, 2)));
}

TEST_CASE("division by zero throws")
{
    CHECK_THROWS_AS(GR(1) / GR(0), std::domain_error);
}

TEST_CASE("conjugation and modulus")
{
    GR z(Rational(3), Rational(-4));
    CHECK(z.conj() == GR(Rational(3), Rational(4)));
    CHECK(z.abs2() == Rational(25));
    CHECK((z * z.conj()) == GR(Rational(25)));
}

TEST_CASE("alpha constants are exact")
{
    using ST = ScalarTraits<GR>;
    // alpha+ * alpha- = 1/2, alpha+ + alpha- = 1, alpha+ - alpha- = i
    CHECK(ST::alpha_plus() * ST::alpha_minus() == ST::half());
    CHECK(ST::alpha_plus() + ST::alpha_minus() == ST::one());
    CHECK(ST::alpha_plus() - ST::alpha_minus() == ST::imag_unit());
}

TEST_CASE("scalar powers with negative exponents")
{
    GR two(2);
    CHECK(scalar_pow(two, 10) == GR(1024));
    CHECK(scalar_pow(two, -2) == GR(Rational(1, 4)));
    GR i = ScalarTraits<GR>::imag_unit();
    CHECK(scalar_pow(i, -1) == -i);
    CHECK(scalar_pow(i, 4) == GR(1));
}

TEST_CASE("parsing rationals and complex literals")
{
    CHECK(parse_rational("3/4") == Rational(3, 4));
    CHECK(parse_rational("-7") == Rational(-7));
    CHECK(parse_rational("0.25") == Rational(1, 4));
    CHECK(parse_rational("-0.5") == Rational(-1, 2));

    CHECK(parse_gaussian("2+3i") == GR(Rational(2), Rational(3)));
    CHECK(parse_gaussian("2-4i") == GR(Rational(2), Rational(-4)));
    CHECK(parse_gaussian("-i") == GR(Rational(0), Rational(-1)));
    CHECK(parse_gaussian("i") == GR(Rational(0), Rational(1)));
    CHECK(parse_gaussian("1/2-1/4i") == GR(Rational(1, 2), Rational(-1, 4)));
    CHECK(parse_gaussian("5") == GR(Rational(5)));
}

TEST_CASE("display round trip")
{
    CHECK(to_string(GR(3)) == "3");
    CHECK(to_string(GR(Rational(-1, 2), Rational(1, 2))) == "-1/2+1/2i");
    CHECK(to_string(GR(Rational(0), Rational(-1))) == "-1i");
    CHECK(parse_gaussian(to_string(GR(Rational(-1, 2), Rational(1, 2)))) ==
          GR(Rational(-1, 2), Rational(1, 2)));
}

TEST_CASE("float traits mirror the exact ones")
{
    using C = std::complex<double>;
    using ST = ScalarTraits<C>;
    CHECK(ST::alpha_plus() == C(0.5, 0.5));
    CHECK(ST::abs2(C(3, 4)) == 25.0);
    CHECK(ST::is_zero(C(0, 0)));
    CHECK_FALSE(ST::is_zero(C(1e-300, 0)));
}
