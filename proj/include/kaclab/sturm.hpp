#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "kaclab/interval.hpp"
#include "kaclab/polynomial.hpp"
#include "kaclab/rational.hpp"

namespace kaclab {

enum class CountMethod { SturmExact, BisectionCertified };

struct CertifiedCount {
    long count = 0;
    CountMethod method = CountMethod::SturmExact;
    bool certified = true;
    int precision_bits_used = 0;
    /// Square-free reduction dropped degree (the sample has a multiple root).
    bool multiplicity_detected = false;
};

namespace sturm_detail {

using ZPoly = std::vector<BigInt>;  // low degree first, primitive, no leading zeros

inline void strip_leading_zeros(ZPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline BigInt content(const ZPoly& p) {
    BigInt g(0);
    for (const auto& c : p) {
        g = gcd(g, c);
        if (g == 1) break;
    }
    return g == 0 ? BigInt(1) : g;
}

inline void make_primitive(ZPoly& p) {
    BigInt g = content(p);
    if (g > 1)
        for (auto& c : p) c /= g;
}

inline ZPoly derivative(const ZPoly& p) {
    if (p.size() <= 1) return {};
    ZPoly d(p.size() - 1);
    for (std::size_t k = 1; k < p.size(); ++k) d[k - 1] = p[k] * static_cast<long>(k);
    return d;
}

/// Pseudo-remainder of f by g scaled by a positive power of |lc(g)|, so signs
/// match the true remainder's.
inline ZPoly prem_positive(ZPoly f, const ZPoly& g) {
    const std::size_t dg = g.size() - 1;
    BigInt lc = g.back();
    BigInt alc = lc < 0 ? BigInt(-lc) : lc;
    while (f.size() > dg) {
        std::size_t df = f.size() - 1;
        BigInt coef = f.back();
        // multiply f by |lc| and subtract (coef*sign(lc)) x^{df-dg} g
        BigInt factor = lc < 0 ? BigInt(-coef) : coef;
        for (auto& c : f) c *= alc;
        for (std::size_t k = 0; k <= dg; ++k) f[df - dg + k] -= factor * g[k];
        strip_leading_zeros(f);
        if (f.empty()) break;
    }
    return f;
}

/// Clears denominators and strips content.
inline ZPoly primitive_from_rational(const QPoly& p) {
    BigInt lcm_den(1);
    for (const auto& c : p.c) lcm_den = lcm(lcm_den, denominator(c));
    ZPoly out;
    out.reserve(p.c.size());
    for (const auto& c : p.c) out.push_back(numerator(c) * (lcm_den / denominator(c)));
    strip_leading_zeros(out);
    make_primitive(out);
    return out;
}

/// gcd(p, p') as a primitive integer polynomial (positive leading coefficient).
inline ZPoly gcd_with_derivative(const ZPoly& p) {
    ZPoly a = p, b = derivative(p);
    make_primitive(b);
    while (!b.empty()) {
        ZPoly r = prem_positive(a, b);
        make_primitive(r);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty() && a.back() < 0)
        for (auto& c : a) c = -c;
    return a;
}

/// Exact division of p by its factor d (remainder known to be zero).
inline ZPoly divide_exact(const ZPoly& p, const ZPoly& d) {
    std::vector<Rational> rem(p.size());
    for (std::size_t k = 0; k < p.size(); ++k) rem[k] = Rational(p[k]);
    QPoly q;
    q.c.assign(p.size() - d.size() + 1, Rational(0));
    const Rational lc{d.back()};
    for (std::size_t i = p.size() - 1;; --i) {
        const std::size_t qi = i - (d.size() - 1);
        Rational coef = rem[i] / lc;
        q.c[qi] = coef;
        if (coef != 0)
            for (std::size_t k = 0; k < d.size(); ++k) rem[qi + k] -= coef * Rational(d[k]);
        if (i == d.size() - 1) break;
    }
    return primitive_from_rational(q);
}

/// Synthetic division by (x - root); the remainder must be zero.
inline ZPoly deflate_at(const ZPoly& p, const Rational& root) {
    QPoly q;
    q.c.assign(p.size() - 1, Rational(0));
    Rational carry(0);
    for (std::size_t k = p.size(); k-- > 1;) {
        carry = Rational(p[k]) + carry * root;
        q.c[k - 1] = carry;
    }
    return primitive_from_rational(q);
}

inline Rational eval_q(const ZPoly& p, const Rational& x) {
    Rational acc(0);
    for (std::size_t k = p.size(); k-- > 0;) acc = acc * x + Rational(p[k]);
    return acc;
}

struct Chain {
    std::vector<ZPoly> seq;

    /// Sign variations at a finite point.
    int variations_at(const Rational& x) const {
        int var = 0, prev = 0;
        for (const auto& s : seq) {
            int sg = eval_q(s, x).sign();
            if (sg == 0) continue;
            if (prev != 0 && sg != prev) ++var;
            prev = sg;
        }
        return var;
    }

    /// Sign variations at -inf (dir < 0) or +inf (dir > 0).
    int variations_at_infinity(int dir) const {
        int var = 0, prev = 0;
        for (const auto& s : seq) {
            if (s.empty()) continue;
            int sg = s.back().sign();
            if (dir < 0 && (s.size() - 1) % 2 == 1) sg = -sg;
            if (sg == 0) continue;
            if (prev != 0 && sg != prev) ++var;
            prev = sg;
        }
        return var;
    }
};

inline Chain build_chain(const ZPoly& squarefree) {
    Chain chain;
    chain.seq.push_back(squarefree);
    ZPoly d = derivative(squarefree);
    make_primitive(d);
    if (!d.empty()) chain.seq.push_back(std::move(d));
    while (chain.seq.back().size() > 1) {
        ZPoly r = prem_positive(chain.seq[chain.seq.size() - 2], chain.seq.back());
        if (r.empty()) break;  // cannot happen for square-free input
        for (auto& c : r) c = -c;
        make_primitive(r);
        chain.seq.push_back(std::move(r));
    }
    return chain;
}

}  // namespace sturm_detail

/// Exact count of distinct real roots of a rational-coefficient polynomial in
/// an interval (endpoints honored per the open/closed flags; infinite
/// endpoints allowed).  The square-free part is taken first; if that reduced
/// the degree, multiplicity_detected is set.
inline CertifiedCount sturm_count(const QPoly& poly, const IntervalSpec& interval) {
    using namespace sturm_detail;
    if (poly.is_zero()) throw std::invalid_argument("sturm_count: zero polynomial");
    CertifiedCount out;
    out.method = CountMethod::SturmExact;
    out.certified = true;
    if (interval.empty()) return out;

    ZPoly p = primitive_from_rational(poly);
    if (p.size() <= 1) return out;  // nonzero constant
    ZPoly g = gcd_with_derivative(p);
    ZPoly sf = g.size() > 1 ? divide_exact(p, g) : p;
    out.multiplicity_detected = g.size() > 1;

    const bool lo_inf = std::isinf(interval.lo), hi_inf = std::isinf(interval.hi);
    Rational lo, hi;
    if (!lo_inf) lo = rational_from_double(interval.lo);
    if (!hi_inf) hi = rational_from_double(interval.hi);

    if (!lo_inf && !hi_inf && lo == hi) {
        if (interval.lo_closed && interval.hi_closed && eval_q(sf, lo) == 0) out.count = 1;
        return out;
    }

    // Deflate roots sitting exactly on finite endpoints, then count the open
    // interval and add the endpoints back per the flags.
    bool root_at_lo = false, root_at_hi = false;
    if (!lo_inf && eval_q(sf, lo) == 0) {
        root_at_lo = true;
        sf = deflate_at(sf, lo);
    }
    if (!hi_inf && sf.size() > 1 && eval_q(sf, hi) == 0) {
        root_at_hi = true;
        sf = deflate_at(sf, hi);
    }

    long interior = 0;
    if (sf.size() > 1) {
        Chain chain = build_chain(sf);
        int vlo = lo_inf ? chain.variations_at_infinity(-1) : chain.variations_at(lo);
        int vhi = hi_inf ? chain.variations_at_infinity(+1) : chain.variations_at(hi);
        interior = vlo - vhi;
    }
    out.count = interior + (root_at_lo && interval.lo_closed ? 1 : 0) +
                (root_at_hi && interval.hi_closed ? 1 : 0);
    return out;
}

inline CertifiedCount sturm_count(const DPoly& poly, const IntervalSpec& interval) {
    return sturm_count(promote(poly), interval);
}

}  // namespace kaclab
