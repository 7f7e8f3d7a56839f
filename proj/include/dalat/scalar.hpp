#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

namespace dalat {

using BigInt   = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return r.template convert_to<double>(); }

/// Exact complex scalar with rational real and imaginary parts.
/// Closed under +, -, *, / (nonzero divisor); the half-integer constants
/// (1+i)/2 and (1-i)/2 used by the difference operators are representable,
/// so every lattice identity can be checked with zero tolerance.
class GaussianRational {
public:
    GaussianRational() = default;
    GaussianRational(Rational re, Rational im = Rational(0))
        : re_(std::move(re)), im_(std::move(im)) {}
    GaussianRational(int v) : re_(v) {}
    GaussianRational(long v) : re_(v) {}

    const Rational& real() const noexcept { return re_; }
    const Rational& imag() const noexcept { return im_; }

    bool is_zero() const { return re_ == 0 && im_ == 0; }

    GaussianRational conj() const { return {re_, -im_}; }

    /// |z|^2 as an exact rational.
    Rational abs2() const { return re_ * re_ + im_ * im_; }

    std::complex<double> to_complex() const
    {
        return {to_double(re_), to_double(im_)};
    }

    friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b)
    {
        return {a.re_ + b.re_, a.im_ + b.im_};
    }
    friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b)
    {
        return {a.re_ - b.re_, a.im_ - b.im_};
    }
    GaussianRational operator-() const { return {-re_, -im_}; }

    friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b)
    {
        return {a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_};
    }

    friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b)
    {
        Rational n = b.abs2();
        if (n == 0)
            throw std::domain_error("GaussianRational: division by zero");
        return {(a.re_ * b.re_ + a.im_ * b.im_) / n,
                (a.im_ * b.re_ - a.re_ * b.im_) / n};
    }

    GaussianRational& operator+=(const GaussianRational& b) { return *this = *this + b; }
    GaussianRational& operator-=(const GaussianRational& b) { return *this = *this - b; }
    GaussianRational& operator*=(const GaussianRational& b) { return *this = *this * b; }
    GaussianRational& operator/=(const GaussianRational& b) { return *this = *this / b; }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b)
    {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b)
    {
        return !(a == b);
    }

private:
    Rational re_{0}, im_{0};
};

inline std::string to_string(const Rational& r)
{
    return r.str();
}

/// Compact display form: "3", "-1/2", "i", "1/2-1/2i".
inline std::string to_string(const GaussianRational& g)
{
    if (g.imag() == 0) return to_string(g.real());
    std::string s;
    if (g.real() != 0) s += to_string(g.real());
    if (g.imag() > 0 && !s.empty()) s += "+";
    s += to_string(g.imag());
    s += "i";
    return s;
}

/// Mode-dispatching scalar operations. The exact and floating modes share
/// one code path through this table; mixing modes is a type error.
template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<GaussianRational> {
    static constexpr bool exact = true;
    using Real = Rational;

    static GaussianRational zero() { return {}; }
    static GaussianRational one() { return {1}; }
    static GaussianRational imag_unit() { return {Rational(0), Rational(1)}; }
    static GaussianRational alpha_plus() { return {Rational(1, 2), Rational(1, 2)}; }
    static GaussianRational alpha_minus() { return {Rational(1, 2), Rational(-1, 2)}; }
    static GaussianRational half() { return {Rational(1, 2)}; }
    static GaussianRational from_int(long v) { return {Rational(v)}; }
    static GaussianRational from_rational(const Rational& r) { return {r}; }
    static GaussianRational conj(const GaussianRational& a) { return a.conj(); }
    static Real abs2(const GaussianRational& a) { return a.abs2(); }
    static bool is_zero(const GaussianRational& a) { return a.is_zero(); }
    static std::complex<double> to_complex(const GaussianRational& a) { return a.to_complex(); }
    static double real_to_double(const Real& r) { return to_double(r); }
};

template <>
struct ScalarTraits<std::complex<double>> {
    static constexpr bool exact = false;
    using Real = double;
    using C = std::complex<double>;

    static C zero() { return {0.0, 0.0}; }
    static C one() { return {1.0, 0.0}; }
    static C imag_unit() { return {0.0, 1.0}; }
    static C alpha_plus() { return {0.5, 0.5}; }
    static C alpha_minus() { return {0.5, -0.5}; }
    static C half() { return {0.5, 0.0}; }
    static C from_int(long v) { return {static_cast<double>(v), 0.0}; }
    static C from_rational(const Rational& r) { return {to_double(r), 0.0}; }
    static C conj(const C& a) { return std::conj(a); }
    static Real abs2(const C& a) { return std::norm(a); }
    static bool is_zero(const C& a) { return a.real() == 0.0 && a.imag() == 0.0; }
    static std::complex<double> to_complex(const C& a) { return a; }
    static double real_to_double(double r) { return r; }
};

/// Integer power with exact division for negative exponents.
template <class T>
T scalar_pow(const T& base, long e)
{
    using ST = ScalarTraits<T>;
    if (e < 0) return ST::one() / scalar_pow(base, -e);
    T acc = ST::one();
    T b = base;
    while (e > 0) {
        if (e & 1) acc = acc * b;
        b = b * b;
        e >>= 1;
    }
    return acc;
}

/// Parses "p/q" and plain-integer forms; also accepts decimals ("0.25").
inline Rational parse_rational(std::string s)
{
    if (s.empty()) throw std::invalid_argument("parse_rational: empty string");
    bool negative = false;
    if (s[0] == '+' || s[0] == '-') {
        negative = (s[0] == '-');
        s.erase(0, 1);
    }
    if (s.empty()) throw std::invalid_argument("parse_rational: sign without digits");

    auto parse_digits = [](std::string d) {
        // strip leading zeros so the big-int constructor never sees an
        // octal-looking literal
        std::size_t k = 0;
        while (k + 1 < d.size() && d[k] == '0') ++k;
        d.erase(0, k);
        for (char c : d)
            if (c < '0' || c > '9')
                throw std::invalid_argument("parse_rational: unexpected character");
        return BigInt(d);
    };

    Rational mag;
    auto dot = s.find('.');
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        BigInt num = parse_digits(s.substr(0, slash));
        BigInt den = parse_digits(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("parse_rational: zero denominator");
        mag = Rational(num, den);
    } else if (dot != std::string::npos) {
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        std::size_t frac_len = s.size() - dot - 1;
        if (digits.empty())
            throw std::invalid_argument("parse_rational: malformed decimal");
        BigInt num = parse_digits(digits);
        BigInt den = 1;
        for (std::size_t k = 0; k < frac_len; ++k) den *= 10;
        mag = Rational(num, den);
    } else {
        mag = Rational(parse_digits(s));
    }
    return negative ? -mag : mag;
}

/// Parses "a+bi" style complex literals with rational parts, e.g.
/// "2+3i", "3", "-i", "1/2-1/4i".
inline GaussianRational parse_gaussian(const std::string& s)
{
    if (s.empty()) throw std::invalid_argument("parse_gaussian: empty string");
    // split at the sign that starts the imaginary part (skip position 0 and
    // signs inside "p/-q" which we do not emit or accept)
    if (s.back() == 'i') {
        std::string body = s.substr(0, s.size() - 1);
        // find split point: last '+' or '-' not at position 0
        std::size_t split = std::string::npos;
        for (std::size_t k = body.size(); k-- > 1;) {
            if (body[k] == '+' || body[k] == '-') { split = k; break; }
        }
        std::string im_str;
        std::string re_str;
        if (split == std::string::npos) {
            re_str = "0";
            im_str = body;
        } else {
            re_str = body.substr(0, split);
            im_str = body.substr(split);
        }
        if (im_str.empty() || im_str == "+") im_str = "1";
        else if (im_str == "-") im_str = "-1";
        return {parse_rational(re_str), parse_rational(im_str)};
    }
    return {parse_rational(s), Rational(0)};
}

} // namespace dalat
