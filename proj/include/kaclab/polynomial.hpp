#pragma once

#include <algorithm>
#include <span>
#include <stdexcept>
#include <vector>

#include "kaclab/rational.hpp"

namespace kaclab {

/// Dense univariate polynomial, coefficients low degree first.  The stored
/// slot length is fixed by construction (a degree-n sample keeps n+1 slots
/// even when leading coefficients are zero), so the reciprocal transform is
/// well defined sample by sample.
template <typename Coef>
struct Polynomial {
    std::vector<Coef> c;

    Polynomial() = default;
    explicit Polynomial(std::vector<Coef> coeffs) : c(std::move(coeffs)) {}

    std::size_t slots() const { return c.size(); }

    /// Index of the last nonzero coefficient, or -1 for the zero polynomial.
    int degree() const {
        for (int k = static_cast<int>(c.size()) - 1; k >= 0; --k)
            if (c[static_cast<std::size_t>(k)] != 0) return k;
        return -1;
    }

    /// Order of vanishing at the origin; slots() for the zero polynomial.
    int trailing_zeros() const {
        for (std::size_t k = 0; k < c.size(); ++k)
            if (c[k] != 0) return static_cast<int>(k);
        return static_cast<int>(c.size());
    }

    bool is_zero() const { return degree() < 0; }

    Coef eval(const Coef& x) const {
        Coef acc(0);
        for (std::size_t k = c.size(); k-- > 0;) acc = acc * x + c[k];
        return acc;
    }

    Polynomial derivative() const {
        if (c.size() <= 1) return Polynomial{std::vector<Coef>{Coef(0)}};
        std::vector<Coef> d(c.size() - 1);
        for (std::size_t k = 1; k < c.size(); ++k) d[k - 1] = c[k] * Coef(static_cast<long>(k));
        return Polynomial{std::move(d)};
    }
};

using DPoly = Polynomial<double>;
using QPoly = Polynomial<Rational>;

/// Exact promotion: doubles are read as the dyadic rationals they are.
inline QPoly promote(const DPoly& p) {
    std::vector<Rational> q(p.c.size());
    for (std::size_t k = 0; k < p.c.size(); ++k) q[k] = rational_from_double(p.c[k]);
    return QPoly{std::move(q)};
}

/// P(-x): flips the sign of odd-index coefficients.  Roots negate, so the
/// count on [a,b] of the image equals the count of P on [-b,-a].
template <typename Coef>
Polynomial<Coef> transform_negate(const Polynomial<Coef>& p) {
    Polynomial<Coef> out = p;
    for (std::size_t k = 1; k < out.c.size(); k += 2) out.c[k] = -out.c[k];
    return out;
}

/// x^n P(1/x) at the stored slot length: the coefficient vector reversed.
/// Nonzero roots map to their reciprocals.
template <typename Coef>
Polynomial<Coef> transform_reciprocal(const Polynomial<Coef>& p) {
    if (p.is_zero()) throw std::invalid_argument("transform_reciprocal: zero polynomial");
    Polynomial<Coef> out = p;
    std::reverse(out.c.begin(), out.c.end());
    return out;
}

struct ZeroMultiplicity {
    int tau = 0;          // index of the first nonzero coefficient
    bool degenerate = false;  // all coefficients were zero
};

/// The paper's tau. By convention the all-zero sample of slot length n+1
/// reports tau = n together with the degenerate flag.
template <typename Coef>
ZeroMultiplicity multiplicity_at_zero(const Polynomial<Coef>& p) {
    if (p.c.empty()) return {0, true};
    int t = p.trailing_zeros();
    if (t == static_cast<int>(p.slots()))
        return {static_cast<int>(p.slots()) - 1, true};
    return {t, false};
}

}  // namespace kaclab
