#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace kaclab {

using Rational = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;

/// Exact conversion: every finite double is a dyadic rational.
inline Rational rational_from_double(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("rational_from_double: non-finite input");
    if (x == 0.0) return Rational(0);
    int e = 0;
    double m = std::frexp(x, &e);           // x = m * 2^e, |m| in [1/2, 1)
    auto mant = static_cast<long long>(std::ldexp(m, 53));  // 53-bit integer
    Rational r(mant);
    int shift = e - 53;
    if (shift >= 0)
        r *= Rational(BigInt(1) << shift);
    else
        r /= Rational(BigInt(1) << (-shift));
    return r;
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline int sign_of(const Rational& r) { return r.sign(); }

inline Rational rational_pow(Rational base, unsigned long k) {
    Rational acc(1);
    while (k) {
        if (k & 1) acc *= base;
        base *= base;
        k >>= 1;
    }
    return acc;
}

}  // namespace kaclab
