#pragma once

#include <stdexcept>

#include "dalat/basis.hpp"

namespace dalat {
namespace mesh {

/// Point z = h(j + ik) of the scaled lattice; h is kept rational so exact
/// arithmetic survives the refinement ladders.
struct MeshPoint {
    long j = 0;
    long k = 0;
    Rational h{1};

    bool in_half_lattice() const { return j >= 0; }
};

/// Splits a rational coordinate x into j = x/h, requiring exact
/// divisibility.
inline long mesh_index(const Rational& x, const Rational& h)
{
    if (h <= 0) throw std::invalid_argument("mesh_index: mesh width must be positive");
    Rational q = x / h;
    BigInt den = denominator(q);
    if (den != 1)
        throw std::domain_error("mesh_index: coordinate is not a lattice point at this mesh");
    return numerator(q).template convert_to<long>();
}

/// Scaled basis polynomial: h^n z^(n)(z/h). On the real axis this equals
/// x(x-h)...(x-(n-1)h)/n!, which the tests pin against the product form.
template <class T>
T basis_poly_h(std::size_t n, const MeshPoint& z)
{
    using ST = ScalarTraits<T>;
    if (!z.in_half_lattice())
        throw std::domain_error("basis_poly_h: point outside the half-lattice");
    T hn = scalar_pow(ST::from_rational(z.h), static_cast<long>(n));
    return hn * basis_poly<T>(n, {static_cast<int>(z.j), static_cast<int>(z.k)});
}

/// Function sampled on a window of the mesh lattice; samples are indexed by
/// the integer pair (j, k), the physical point being h(j + ik).
template <class T>
struct MeshFunction {
    Rational h{1};
    LatticeFunction<T> samples;
};

/// Scaled horizontal difference (f(z+h) - f(z))/h.
template <class T>
MeshFunction<T> delta_x_h(const MeshFunction<T>& f)
{
    using ST = ScalarTraits<T>;
    T inv_h = ST::one() / ST::from_rational(f.h);
    LatticeFunction<T> diff = apply_difference(Difference::dx, f.samples);
    return {f.h, LatticeFunction<T>::tabulate(diff.window(), diff.rows(), diff.cols(),
                                              [&](LatticePoint p) { return diff.at(p) * inv_h; })};
}

/// Scaled antiderivative (Z_h f)(z) = (f(0)-f(z)) h/2 + integral from 0 to
/// z with mesh-length steps; equals h times the unit-lattice Z of the
/// sample table.
template <class T>
MeshFunction<T> z_h(const MeshFunction<T>& f)
{
    using ST = ScalarTraits<T>;
    T hval = ST::from_rational(f.h);
    LatticeFunction<T> zf = z_apply(f.samples);
    return {f.h, LatticeFunction<T>::tabulate(zf.window(), zf.rows(), zf.cols(),
                                              [&](LatticePoint p) { return zf.at(p) * hval; })};
}

template <class T>
struct KernelValue {
    T value;
    double tail = 0.0;  // magnitude of the last summand
};

/// Truncated mesh kernel K_h(z,w) = sum_n z_h^(n) conj(w_h^(n)).
template <class T>
KernelValue<T> kernel_h(const MeshPoint& z, const MeshPoint& w, std::size_t terms)
{
    using ST = ScalarTraits<T>;
    if (z.h != w.h) throw std::invalid_argument("kernel_h: mesh widths differ");
    KernelValue<T> out{ST::zero(), 0.0};
    T last = ST::zero();
    for (std::size_t n = 0; n < terms; ++n) {
        last = basis_poly_h<T>(n, z) * ST::conj(basis_poly_h<T>(n, w));
        out.value += last;
    }
    out.tail = std::sqrt(ST::real_to_double(ST::abs2(last)));
    return out;
}

/// Truncated refinement-limit kernel sum_n (z conj(w))^n / (n!)^2.
template <class T>
KernelValue<T> limit_kernel(const T& z, const T& w, std::size_t terms)
{
    using ST = ScalarTraits<T>;
    KernelValue<T> out{ST::zero(), 0.0};
    T prod = z * ST::conj(w);
    T term = ST::one();  // (z conj w)^n / (n!)^2
    for (std::size_t n = 0; n < terms; ++n) {
        if (n > 0) {
            T nn = ST::from_int(static_cast<long>(n));
            term = term * prod / (nn * nn);
        }
        out.value += term;
    }
    out.tail = std::sqrt(ST::real_to_double(ST::abs2(term)));
    return out;
}

struct AdjointIdentity {
    BigInt lhs;
    BigInt rhs;
    bool equal = false;
};

/// Both sides of the monomial adjoint identity in the limit kernel's inner
/// product, where <z^a, z^b> = (a!)^2 delta_ab:
///   <d/dz z^n, z^m> = n (m!)^2 delta_{n-1,m}
///   <z^n, z^{m+1}/(m+1)> = ((m+1)!)^2/(m+1) delta_{n,m+1}.
/// Exact big-integer arithmetic (factorials grow fast).
inline AdjointIdentity adjoint_identity_check(std::size_t n, std::size_t m)
{
    auto factorial = [](std::size_t k) {
        BigInt f = 1;
        for (std::size_t i = 2; i <= k; ++i) f *= static_cast<long>(i);
        return f;
    };

    AdjointIdentity out;
    BigInt mfac = factorial(m);
    out.lhs = (n == m + 1) ? BigInt(static_cast<long>(n)) * mfac * mfac : BigInt(0);
    if (n == m + 1) {
        BigInt m1fac = factorial(m + 1);
        out.rhs = m1fac * m1fac / static_cast<long>(m + 1);
    } else {
        out.rhs = 0;
    }
    out.equal = (out.lhs == out.rhs);
    return out;
}

} // namespace mesh
} // namespace dalat
