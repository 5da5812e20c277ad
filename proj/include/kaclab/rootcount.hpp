#pragma once

#include <cmath>
#include <vector>

#include "kaclab/certify.hpp"
#include "kaclab/interval.hpp"
#include "kaclab/polynomial.hpp"
#include "kaclab/sturm.hpp"

namespace kaclab {

enum class Transform { Identity, Negate, Reciprocal, NegateReciprocal };

template <typename Coef>
Polynomial<Coef> apply_transform(const Polynomial<Coef>& p, Transform tf) {
    switch (tf) {
        case Transform::Identity: return p;
        case Transform::Negate: return transform_negate(p);
        case Transform::Reciprocal: return transform_reciprocal(p);
        case Transform::NegateReciprocal: return transform_reciprocal(transform_negate(p));
    }
    return p;
}

struct IntervalPiece {
    Transform tf;
    IntervalSpec sub;  // always within [0, 1], never containing 0 as a member
};

/// An interval of the line rewritten as transform pieces inside [0,1] plus a
/// flag for the origin.  Negative reals go through P(-x), the region beyond 1
/// through x^n P(1/x); reciprocal endpoints are taken in double precision.
struct Decomposition {
    std::vector<IntervalPiece> pieces;
    bool include_zero = false;
};

namespace rootcount_detail {

inline void emit_positive(double lo, double hi, bool lo_cl, bool hi_cl, bool negated,
                          std::vector<IntervalPiece>& out) {
    if (lo > hi || (lo == hi && !(lo_cl && hi_cl))) return;
    const Transform base = negated ? Transform::Negate : Transform::Identity;
    const Transform recip = negated ? Transform::NegateReciprocal : Transform::Reciprocal;
    const bool touches_unit = lo < 1.0 || (lo == 1.0 && lo_cl);
    if (touches_unit) {
        IntervalSpec sub;
        sub.lo = lo;
        sub.lo_closed = lo_cl;
        if (hi >= 1.0) {
            sub.hi = 1.0;
            sub.hi_closed = hi > 1.0 ? true : hi_cl;
        } else {
            sub.hi = hi;
            sub.hi_closed = hi_cl;
        }
        if (!sub.empty()) out.push_back({base, sub});
    }
    if (hi > 1.0) {
        const double b_lo = std::max(lo, 1.0);
        const bool b_lo_cl = lo > 1.0 ? lo_cl : false;  // x = 1 already covered above
        IntervalSpec sub;
        sub.lo = std::isinf(hi) ? 0.0 : 1.0 / hi;
        sub.lo_closed = std::isinf(hi) ? false : hi_cl;
        sub.hi = 1.0 / b_lo;
        sub.hi_closed = b_lo_cl;
        if (!sub.empty()) out.push_back({recip, sub});
    }
}

}  // namespace rootcount_detail

inline Decomposition decompose_interval(const IntervalSpec& iv) {
    Decomposition d;
    if (iv.empty()) return d;
    d.include_zero = iv.contains_zero();
    if (iv.hi > 0.0) {
        const double plo = std::max(iv.lo, 0.0);
        const bool plo_cl = iv.lo > 0.0 && iv.lo_closed;
        rootcount_detail::emit_positive(plo, iv.hi, plo_cl, iv.hi_closed, false, d.pieces);
    }
    if (iv.lo < 0.0) {
        const double nlo = std::max(-iv.hi, 0.0);
        const bool nlo_cl = iv.hi < 0.0 && iv.hi_closed;
        rootcount_detail::emit_positive(nlo, -iv.lo, nlo_cl, iv.lo_closed, true, d.pieces);
    }
    return d;
}

struct SampleCountOptions {
    /// Exact-coefficient samples up to this degree take the Sturm path; larger
    /// degrees use certified bisection (identical counts, certified both ways).
    int sturm_degree_cap = 64;
    BisectionLimits limits{};
};

struct SampleCountResult {
    long count = 0;   // tau-multiplicity at 0 (if included) + distinct roots elsewhere
    int tau = 0;
    bool degenerate = false;      // all-zero sample
    bool certified = true;
    bool multiplicity_flag = false;  // a square-free reduction dropped degree
    int bits_used = 53;
};

/// Count a sample against a decomposed interval.  Roots at the origin are
/// counted with multiplicity tau; everything else is a distinct-root count.
/// The all-zero sample reports zero roots with the degenerate flag raised.
inline SampleCountResult count_sample(const DPoly& sample, const Decomposition& dec,
                                      bool exact_coefficients,
                                      const SampleCountOptions& opt = {}) {
    SampleCountResult res;
    auto mz = multiplicity_at_zero(sample);
    res.tau = mz.tau;
    res.degenerate = mz.degenerate;
    if (res.degenerate) return res;
    if (dec.include_zero) res.count += res.tau;

    const bool use_sturm =
        exact_coefficients && sample.degree() <= opt.sturm_degree_cap;
    for (std::size_t i = 0; i < dec.pieces.size(); ++i) {
        const auto& piece = dec.pieces[i];
        DPoly tp = apply_transform(sample, piece.tf);
        if (tp.is_zero()) continue;  // cannot happen for non-degenerate samples
        if (use_sturm) {
            CertifiedCount cc = sturm_count(promote(tp), piece.sub);
            res.count += cc.count;
            res.multiplicity_flag |= cc.multiplicity_detected;
        } else {
            CertifiedCounter counter(tp, opt.limits);
            CertifiedCount cc = counter.count(piece.sub);
            res.count += cc.count;
            res.certified &= cc.certified;
            res.bits_used = std::max(res.bits_used, cc.precision_bits_used);
        }
    }
    return res;
}

inline SampleCountResult count_in_interval(const DPoly& sample, const IntervalSpec& iv,
                                           bool exact_coefficients,
                                           const SampleCountOptions& opt = {}) {
    return count_sample(sample, decompose_interval(iv), exact_coefficients, opt);
}

}  // namespace kaclab
