#pragma once

#include <mpfr.h>

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

#include "kaclab/interval.hpp"
#include "kaclab/polynomial.hpp"
#include "kaclab/sturm.hpp"

namespace kaclab {

struct BisectionLimits {
    int start_bits = 128;
    int max_bits = 4096;
};

namespace certify_detail {

inline constexpr double kUlp = 0x1p-53;

// Geometric tails starting at index m, radius r in (0,1):
//   tail0 = sum r^k, tail1 = sum k r^{k-1}, tail2 = sum k(k-1) r^{k-2},
//   tail3 = sum k(k-1)(k-2) r^{k-3}.
struct Tails {
    double t0 = 0, t1 = 0, t2 = 0, t3 = 0;
};

inline Tails geometric_tails(double m, double r) {
    Tails t;
    const double q = 1.0 - r;
    const double rm = std::pow(r, m);
    t.t0 = rm / q;
    t.t1 = (rm / r) * (m * q + r) / (q * q);
    t.t2 = (rm / (r * r)) * (m * (m - 1) * q * q + 2 * m * r * q + 2 * r * r) / (q * q * q);
    t.t3 = (rm / (r * r * r)) *
           (m * (m - 1) * (m - 2) * q * q * q + 3 * m * (m - 1) * r * q * q + 6 * m * r * r * q +
            6 * r * r * r) /
           (q * q * q * q);
    const double slack = 1.0 + 1e-10;  // closed forms evaluated in rounded arithmetic
    t.t0 *= slack;
    t.t1 *= slack;
    t.t2 *= slack;
    t.t3 *= slack;
    return t;
}

/// A polynomial prepared for certified counting: rounded double coefficients,
/// their absolute values, and bounds covering what rounding discarded when the
/// source had non-dyadic rational coefficients.
struct Prepared {
    std::vector<double> c;    // rounded coefficients, zero-padded to a multiple of 4
    std::vector<double> ac;   // |c|
    std::vector<double> wc1;  // k c_k
    std::vector<double> wc2;  // k(k-1)/2 c_k
    std::vector<double> aw3;  // k(k-1)(k-2)/6 |c_k|
    std::vector<double> defect;  // per-coefficient rounding defect (empty when dyadic-exact)
    std::size_t slots = 0;       // real slot count before padding
    double amax = 0.0;           // bound on the true |coefficients|
    double d0 = 0, d1 = 0, d2 = 0, d3 = 0;  // defect sums weighted by 1, k, k(k-1), k(k-1)(k-2)
    bool has_defects = false;

    void init_from_double(const DPoly& p) {
        c = p.c;
        finish_init();
    }

    void init_from_rational(const QPoly& p) {
        exact_storage_ = p;
        exact_ready_ = true;
        c.resize(p.c.size());
        defect.assign(p.c.size(), 0.0);
        for (std::size_t k = 0; k < p.c.size(); ++k) {
            c[k] = to_double(p.c[k]);
            Rational d = p.c[k] - rational_from_double(c[k]);
            double dk = d == 0 ? 0.0 : std::fabs(to_double(d)) * (1.0 + 1e-12) + 1e-300;
            defect[k] = dk;
            const double kk = static_cast<double>(k);
            d0 += dk;
            d1 += kk * dk;
            d2 += kk * (kk - 1) * dk;
            d3 += kk * (kk - 1) * (kk - 2) * dk;
            if (dk > 0) has_defects = true;
        }
        if (!has_defects)
            defect.clear();
        else
            defect.resize((c.size() + 3) & ~std::size_t{3}, 0.0);
        finish_init();
        for (std::size_t k = 0; k < slots; ++k)
            amax = std::max(amax, ac[k] + (has_defects ? defect[k] : 0.0));
    }

private:
    void finish_init() {
        slots = c.size();
        const std::size_t padded = (slots + 3) & ~std::size_t{3};
        c.resize(padded, 0.0);
        ac.resize(padded);
        wc1.resize(padded);
        wc2.resize(padded);
        aw3.resize(padded);
        for (std::size_t k = 0; k < padded; ++k) {
            const double kk = static_cast<double>(k);
            ac[k] = std::fabs(c[k]);
            wc1[k] = kk * c[k];
            wc2[k] = 0.5 * kk * (kk - 1.0) * c[k];
            aw3[k] = kk * (kk - 1.0) * (kk - 2.0) * (1.0 / 6.0) * ac[k];
            amax = std::max(amax, ac[k]);
        }
    }

public:

    /// Exact coefficients, built on first use (the escalation paths are rare;
    /// the hot path must not touch GMP).
    const QPoly& exact() const {
        if (!exact_ready_) {
            exact_storage_.c.resize(c.size());
            for (std::size_t k = 0; k < c.size(); ++k)
                exact_storage_.c[k] = rational_from_double(c[k]);
            exact_ready_ = true;
        }
        return exact_storage_;
    }

private:
    mutable QPoly exact_storage_;
    mutable bool exact_ready_ = false;
};

/// RAII wrapper for a raw mpfr value.
class MpfrVal {
public:
    explicit MpfrVal(int bits) { mpfr_init2(v_, bits); }
    MpfrVal(const MpfrVal&) = delete;
    MpfrVal& operator=(const MpfrVal&) = delete;
    ~MpfrVal() { mpfr_clear(v_); }
    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }

private:
    mpfr_t v_;
};

struct ScanOut {
    double p0 = 0, p1 = 0, p2 = 0;  // P(t), P'(t), P''(t)/2 (computed)
    double e0 = 0, e1 = 0, e2 = 0;  // enclosure radii around the true values
    double a3 = 0;                  // bound on sup |P'''|/6 over |x| <= r
};

}  // namespace certify_detail

/// Certified adaptive-bisection root counter for one polynomial.  The fast
/// path runs entirely in double precision with rigorous running error bounds
/// and third-order Taylor certificates; unresolved panels escalate to MPFR
/// with doubling precision, and point signs can always fall back to exact
/// rational evaluation.
class CertifiedCounter {
public:
    /// Sentinel for "sign not decided within the precision and cost budget".
    static constexpr int kSignUndecided = 2;

    explicit CertifiedCounter(const DPoly& poly, BisectionLimits limits = {})
        : limits_(limits) {
        if (poly.is_zero()) throw std::invalid_argument("bisection: zero polynomial");
        prep_.init_from_double(poly);
    }
    explicit CertifiedCounter(const QPoly& poly, BisectionLimits limits = {})
        : limits_(limits) {
        if (poly.is_zero()) throw std::invalid_argument("bisection: zero polynomial");
        prep_.init_from_rational(poly);
    }

    /// Count distinct real roots in a bounded interval, honoring endpoint flags.
    CertifiedCount count(const IntervalSpec& interval) {
        if (!interval.bounded())
            throw std::invalid_argument("bisection: unbounded interval (apply transform_reciprocal first)");
        CertifiedCount out;
        out.method = CountMethod::BisectionCertified;
        if (interval.empty()) {
            out.precision_bits_used = bits_used_;
            return out;
        }
        if (interval.lo == interval.hi) {
            int s = sign_at(interval.lo);
            out.count = s == 0 ? 1 : 0;
            out.certified = s != kSignUndecided;
            out.precision_bits_used = bits_used_;
            return out;
        }
        int sa = sign_at(interval.lo);
        int sb = sign_at(interval.hi);
        bool endpoint_undecided = sa == kSignUndecided || sb == kSignUndecided;
        if (sa == kSignUndecided) sa = 1;
        if (sb == kSignUndecided) sb = 1;
        long n = count_half_open(interval.lo, interval.hi, sa, sb);
        if (sb == 0 && !interval.hi_closed) n -= 1;
        if (sa == 0 && interval.lo_closed) n += 1;
        out.count = n;
        out.certified = certified_ && !endpoint_undecided;
        out.precision_bits_used = bits_used_;
        return out;
    }

    /// Roots in (a, b] given certified endpoint signs; used by the sampling
    /// hot path which caches signs across adjacent regions.
    long count_half_open(double a, double b, int sa, int sb) {
        certified_ = true;
        long total = 0;
        stack_.clear();
        stack_.push_back({a, b, sa, sb, 0});
        while (!stack_.empty()) {
            PanelD p = stack_.back();
            stack_.pop_back();
            total += resolve_panel(p);
        }
        return total;
    }

    bool last_certified() const { return certified_; }
    int bits_used() const { return bits_used_; }

    struct Stats {
        long panels = 0;
        long coef_visits = 0;
        long escalations = 0;
        long excluded = 0;
        long monotone = 0;
    };
    const Stats& stats() const { return stats_; }

    /// Certified sign of P at a double point (exact-zero detection included).
    int sign_at(double x) {
        const std::size_t n = prep_.c.size();
        const double ax = std::fabs(x);
        if (!prep_.has_defects || ax <= 1.0) {
            double acc = 0, s = 0;
            for (std::size_t k = n; k-- > 0;) {
                acc = acc * x + prep_.c[k];
                s = s * ax + prep_.ac[k];
            }
            double err = s * (2.0 * static_cast<double>(n) + 4.0) * certify_detail::kUlp +
                         prep_.d0 + 1e-300;
            if (std::fabs(acc) > err) return acc > 0 ? 1 : -1;
        }
        return sign_at_slow(rational_from_double(x));
    }

private:
    struct PanelD {
        double a, b;
        int sa, sb;
        int depth;
    };

    certify_detail::Prepared prep_;
    BisectionLimits limits_;
    std::vector<PanelD> stack_;
    bool certified_ = true;
    int bits_used_ = 53;
    Stats stats_;

    // ---- double fast path -------------------------------------------------

    /// One fused pass over the coefficient arrays: P, P', P''/2 at t plus the
    /// absolute-sum bounds at r >= |t|, 4-lane strided so the compiler can
    /// vectorize.  Truncation at index K with rigorous geometric tails.
    certify_detail::ScanOut scan(double t, double r) {
        using namespace certify_detail;
        std::size_t K = prep_.slots - 1;
        Tails tails{};
        if (r > 0 && r < 1.0 && prep_.amax > 0) {
            // truncate once the discarded tail is ~2^-60 of the coefficient scale
            double kk = (-60.0 * M_LN2 + std::log1p(-r)) / std::log(r);
            auto K2 = static_cast<std::size_t>(std::max(4.0, std::ceil(kk)));
            if (K2 < K) {
                K = K2;
                tails = geometric_tails(static_cast<double>(K + 1), r);
            }
        }
        const std::size_t blocks = (K + 4) >> 2;  // covers indices 0..K (plus real spill terms)
        stats_.coef_visits += static_cast<long>(blocks) * 4;

        double q0, q1, q2, s0, s1, s2, s3;
        if (t == 0.0 || std::fabs(t) < 0x1p-500 || r < 0x1p-500) {
            // powers of t underflow; fall back to the scalar cascade
            q0 = q1 = q2 = s0 = s1 = s2 = s3 = 0.0;
            const double* cc = prep_.c.data();
            const double* aa = prep_.ac.data();
            for (std::size_t k = 4 * blocks; k-- > 0;) {
                q2 = q2 * t + q1;
                q1 = q1 * t + q0;
                q0 = q0 * t + cc[k];
                s3 = s3 * r + s2;
                s2 = s2 * r + s1;
                s1 = s1 * r + s0;
                s0 = s0 * r + aa[k];
            }
        } else {
            const double t4 = (t * t) * (t * t);
            const double r4 = (r * r) * (r * r);
            double vq0[4] = {0, 0, 0, 0}, vq1[4] = {0, 0, 0, 0}, vq2[4] = {0, 0, 0, 0};
            double vs0[4] = {0, 0, 0, 0}, vs1[4] = {0, 0, 0, 0}, vs2[4] = {0, 0, 0, 0},
                   vs3[4] = {0, 0, 0, 0};
            const double* cc = prep_.c.data();
            const double* w1 = prep_.wc1.data();
            const double* w2 = prep_.wc2.data();
            const double* a3p = prep_.aw3.data();
            for (std::size_t b = blocks; b-- > 0;) {
                const std::size_t base = 4 * b;
                for (int l = 0; l < 4; ++l) {
                    const double cl = cc[base + l];
                    const double w1l = w1[base + l];
                    const double w2l = w2[base + l];
                    vq0[l] = vq0[l] * t4 + cl;
                    vq1[l] = vq1[l] * t4 + w1l;
                    vq2[l] = vq2[l] * t4 + w2l;
                    vs0[l] = vs0[l] * r4 + std::fabs(cl);
                    vs1[l] = vs1[l] * r4 + std::fabs(w1l);
                    vs2[l] = vs2[l] * r4 + std::fabs(w2l);
                    vs3[l] = vs3[l] * r4 + a3p[base + l];
                }
            }
            auto lanes = [](const double v[4], double x) {
                return ((v[3] * x + v[2]) * x + v[1]) * x + v[0];
            };
            q0 = lanes(vq0, t);
            // sum wc1 t^k = t P'(t); sum wc2 t^k = t^2 P''(t)/2
            q1 = lanes(vq1, t) / t;
            q2 = lanes(vq2, t) / t / t;
            s0 = lanes(vs0, r);
            s1 = lanes(vs1, r) / r;
            s2 = lanes(vs2, r) / r / r;
            s3 = ((lanes(vs3, r) / r) / r) / r;
        }

        const double Kd = static_cast<double>(K + 6);
        const double infl = 1.0 + 32.0 * Kd * kUlp;
        const double am = prep_.amax;
        ScanOut out;
        out.p0 = q0;
        out.p1 = q1;
        out.p2 = q2;
        out.e0 = s0 * infl * (4.0 * Kd * kUlp) + tails.t0 * am + prep_.d0 + 1e-300;
        out.e1 = s1 * infl * (16.0 * Kd * kUlp) + tails.t1 * am + prep_.d1 + 1e-300;
        out.e2 = s2 * infl * (32.0 * Kd * kUlp) + 0.5 * (tails.t2 * am + prep_.d2) + 1e-300;
        out.a3 = s3 * infl + (tails.t3 * am + prep_.d3) / 6.0 + 1e-300;
        return out;
    }

    long resolve_panel(const PanelD& p) {
        using namespace certify_detail;
        ++stats_.panels;
        const double width = p.b - p.a;
        const double scale = std::max(std::fabs(p.a), std::fabs(p.b));
        if (p.depth > 100 || width < scale * 0x1p-46 || !(width > 0)) {
            return count_escalated_entry(p);
        }
        const double t = 0.5 * (p.a + p.b);
        const double r = scale;
        const double h = std::max(t - p.a, p.b - t) * (1.0 + 4.0 * kUlp);
        if (prep_.has_defects && r > 1.0) return count_escalated_entry(p);
        ScanOut sc = scan(t, r);
        const double ap0 = std::fabs(sc.p0), ap1 = std::fabs(sc.p1), ap2 = std::fabs(sc.p2);
        // exclusion: |P| > 0 across the panel
        double margin = ap0 - h * ap1 - h * h * ap2 -
                        (sc.e0 + h * sc.e1 + h * h * sc.e2 + h * h * h * sc.a3);
        if (margin > 0) {
            ++stats_.excluded;
            return 0;
        }
        // monotonicity: P' keeps one sign across the panel
        double dmargin = ap1 - sc.e1 - h * (2.0 * ap2 + 2.0 * sc.e2) - 3.0 * h * h * sc.a3;
        if (dmargin > 0) {
            ++stats_.monotone;
            if (p.sb == 0) return 1;       // root exactly at b, inside (a, b]
            if (p.sa == 0) return 0;       // root at a excluded from (a, b]
            return p.sa != p.sb ? 1 : 0;
        }
        // the scan already certifies the midpoint sign unless |P(t)| is tiny
        int st = std::fabs(sc.p0) > sc.e0 ? (sc.p0 > 0 ? 1 : -1) : sign_at(t);
        if (st == kSignUndecided) {
            certified_ = false;
            if (p.sb == 0) return 1;
            return (p.sa != 0 && p.sb != 0 && p.sa != p.sb) ? 1 : 0;
        }
        stack_.push_back({p.a, t, p.sa, st, p.depth + 1});
        stack_.push_back({t, p.b, st, p.sb, p.depth + 1});
        return 0;
    }

    // ---- escalation -------------------------------------------------------

    long count_escalated_entry(const PanelD& p) {
        ++stats_.escalations;
        return count_escalated(rational_from_double(p.a), rational_from_double(p.b), p.sa, p.sb,
                               std::max(limits_.start_bits, 64), 0);
    }

    enum class Verdict { Excluded, Monotone, Split };

    long count_escalated(const Rational& a, const Rational& b, int sa, int sb, int bits,
                         int depth) {
        using namespace certify_detail;
        if (bits > limits_.max_bits || depth > 2 * limits_.max_bits) {
            certified_ = false;
            if (sb == 0) return 1;
            return (sa != 0 && sb != 0 && sa != sb) ? 1 : 0;
        }
        bits_used_ = std::max(bits_used_, bits);

        // Round the midpoint to `bits` bits so children keep short dyadic
        // endpoints; if the panel is already thinner than one ulp at this
        // precision, raise precision instead.
        const Rational mid = (a + b) / 2;
        MpfrVal t(bits);
        mpfr_set_q(t.get(), mid.backend().data(), MPFR_RNDN);
        Rational tq;
        mpfr_get_q(tq.backend().data(), t.get());
        if (!(tq > a && tq < b)) return count_escalated(a, b, sa, sb, bits * 2, depth + 1);

        switch (escalated_verdict(a, b, tq, bits)) {
            case Verdict::Excluded:
                return 0;
            case Verdict::Monotone:
                if (sb == 0) return 1;
                if (sa == 0) return 0;
                return sa != sb ? 1 : 0;
            case Verdict::Split:
                break;
        }
        // raise precision once panels get thinner than ~2^-bits/2 relative
        int next_bits = bits;
        Rational floor_width = Rational(std::max(1.0, std::fabs(to_double(b))));
        floor_width /= rational_pow(Rational(2), static_cast<unsigned long>(bits / 2));
        if (b - a < floor_width) next_bits = bits * 2;
        int st = sign_at_slow(tq);
        if (st == kSignUndecided) {
            certified_ = false;
            if (sb == 0) return 1;
            return (sa != 0 && sb != 0 && sa != sb) ? 1 : 0;
        }
        return count_escalated(a, tq, sa, st, next_bits, depth + 1) +
               count_escalated(tq, b, st, sb, next_bits, depth + 1);
    }

    /// Taylor certificates at a rational midpoint, evaluated entirely in MPFR
    /// (double would underflow on deep panels).  Rounding model per value:
    /// err <= (4n+8) 2^{1-bits} * (abs sum at radius r), and the final margin
    /// comparisons keep a 2^-20 relative headroom that swamps the rounding of
    /// the margin expressions themselves.
    Verdict escalated_verdict(const Rational& a, const Rational& b, const Rational& tq,
                              int bits) const {
        using namespace certify_detail;
        const std::size_t n = prep_.exact().c.size();
        MpfrVal t(bits), q0(bits), q1(bits), q2(bits), ck(bits);
        mpfr_set_q(t.get(), tq.backend().data(), MPFR_RNDN);
        mpfr_set_zero(q0.get(), 1);
        mpfr_set_zero(q1.get(), 1);
        mpfr_set_zero(q2.get(), 1);
        for (std::size_t k = n; k-- > 0;) {
            mpfr_fma(q2.get(), q2.get(), t.get(), q1.get(), MPFR_RNDN);
            mpfr_fma(q1.get(), q1.get(), t.get(), q0.get(), MPFR_RNDN);
            mpfr_set_q(ck.get(), prep_.exact().c[k].backend().data(), MPFR_RNDN);
            mpfr_fma(q0.get(), q0.get(), t.get(), ck.get(), MPFR_RNDN);
        }
        // abs sums at radius r = max(|a|,|b|) and the half-width h, in MPFR
        MpfrVal r(bits), h(bits), tmp(bits);
        mpfr_set_q(r.get(), a.backend().data(), MPFR_RNDU);
        mpfr_abs(r.get(), r.get(), MPFR_RNDU);
        mpfr_set_q(tmp.get(), b.backend().data(), MPFR_RNDU);
        mpfr_abs(tmp.get(), tmp.get(), MPFR_RNDU);
        mpfr_max(r.get(), r.get(), tmp.get(), MPFR_RNDU);
        {
            Rational ha = tq - a, hb = b - tq;
            const Rational& hq = ha > hb ? ha : hb;
            mpfr_set_q(h.get(), hq.backend().data(), MPFR_RNDU);
            mpfr_nextabove(h.get());
        }
        MpfrVal s0(bits), s1(bits), s2(bits), s3(bits);
        mpfr_set_zero(s0.get(), 1);
        mpfr_set_zero(s1.get(), 1);
        mpfr_set_zero(s2.get(), 1);
        mpfr_set_zero(s3.get(), 1);
        for (std::size_t k = n; k-- > 0;) {
            mpfr_fma(s3.get(), s3.get(), r.get(), s2.get(), MPFR_RNDU);
            mpfr_fma(s2.get(), s2.get(), r.get(), s1.get(), MPFR_RNDU);
            mpfr_fma(s1.get(), s1.get(), r.get(), s0.get(), MPFR_RNDU);
            double ak = prep_.ac[k] + (prep_.has_defects ? prep_.defect[k] : 0.0);
            mpfr_mul(s0.get(), s0.get(), r.get(), MPFR_RNDU);
            mpfr_add_d(s0.get(), s0.get(), ak, MPFR_RNDU);
        }
        // e_j = s_j * (4n+8) * 2^{1-bits}; a3 slot reuses s3 directly
        const double eps_num = 4.0 * static_cast<double>(n) + 8.0;
        auto scale_eps = [&](MpfrVal& s) {
            mpfr_mul_d(s.get(), s.get(), eps_num, MPFR_RNDU);
            mpfr_mul_2si(s.get(), s.get(), 1 - bits, MPFR_RNDU);
        };
        MpfrVal e0(bits), e1(bits), e2(bits);
        mpfr_set(e0.get(), s0.get(), MPFR_RNDU);
        scale_eps(e0);
        mpfr_set(e1.get(), s1.get(), MPFR_RNDU);
        scale_eps(e1);
        mpfr_set(e2.get(), s2.get(), MPFR_RNDU);
        scale_eps(e2);

        MpfrVal lhs(bits), rhs(bits), acc(bits);
        auto aq = [&](MpfrVal& dst, mpfr_srcptr v) { mpfr_abs(dst.get(), v, MPFR_RNDU); };
        // exclusion: |q0| > h|q1| + h^2 |q2| + e0 + h e1 + h^2 e2 + h^3 s3
        aq(lhs, q0.get());
        aq(acc, q1.get());
        mpfr_mul(rhs.get(), acc.get(), h.get(), MPFR_RNDU);
        aq(acc, q2.get());
        mpfr_mul(acc.get(), acc.get(), h.get(), MPFR_RNDU);
        mpfr_mul(acc.get(), acc.get(), h.get(), MPFR_RNDU);
        mpfr_add(rhs.get(), rhs.get(), acc.get(), MPFR_RNDU);
        mpfr_add(rhs.get(), rhs.get(), e0.get(), MPFR_RNDU);
        mpfr_mul(acc.get(), e1.get(), h.get(), MPFR_RNDU);
        mpfr_add(rhs.get(), rhs.get(), acc.get(), MPFR_RNDU);
        mpfr_mul(acc.get(), e2.get(), h.get(), MPFR_RNDU);
        mpfr_mul(acc.get(), acc.get(), h.get(), MPFR_RNDU);
        mpfr_add(rhs.get(), rhs.get(), acc.get(), MPFR_RNDU);
        mpfr_mul(acc.get(), s3.get(), h.get(), MPFR_RNDU);
        mpfr_mul(acc.get(), acc.get(), h.get(), MPFR_RNDU);
        mpfr_mul(acc.get(), acc.get(), h.get(), MPFR_RNDU);
        mpfr_add(rhs.get(), rhs.get(), acc.get(), MPFR_RNDU);
        mpfr_mul_d(rhs.get(), rhs.get(), 1.0 + 0x1p-20, MPFR_RNDU);
        if (mpfr_cmp(lhs.get(), rhs.get()) > 0) return Verdict::Excluded;
        // monotone: |q1| > e1 + h (2|q2| + 2 e2) + 3 h^2 s3
        aq(lhs, q1.get());
        aq(acc, q2.get());
        mpfr_add(acc.get(), acc.get(), e2.get(), MPFR_RNDU);
        mpfr_mul_2si(acc.get(), acc.get(), 1, MPFR_RNDU);
        mpfr_mul(rhs.get(), acc.get(), h.get(), MPFR_RNDU);
        mpfr_add(rhs.get(), rhs.get(), e1.get(), MPFR_RNDU);
        mpfr_mul(acc.get(), s3.get(), h.get(), MPFR_RNDU);
        mpfr_mul(acc.get(), acc.get(), h.get(), MPFR_RNDU);
        mpfr_mul_d(acc.get(), acc.get(), 3.0, MPFR_RNDU);
        mpfr_add(rhs.get(), rhs.get(), acc.get(), MPFR_RNDU);
        mpfr_mul_d(rhs.get(), rhs.get(), 1.0 + 0x1p-20, MPFR_RNDU);
        if (mpfr_cmp(lhs.get(), rhs.get()) > 0) return Verdict::Monotone;
        return Verdict::Split;
    }

    /// Sign at an exact rational point.  MPFR ladder with exact-zero detection
    /// through the inexact flags (an exactly-representable evaluation that
    /// lands on 0 is a proven root), then cost-bounded exact arithmetic.
    /// Returns kSignUndecided when every route is exhausted or too expensive.
    int sign_at_slow(const Rational& x) {
        using namespace certify_detail;
        const QPoly& q = prep_.exact();
        const std::size_t n = q.c.size();
        for (int bits = std::max(limits_.start_bits, 96); bits <= limits_.max_bits; bits *= 2) {
            bits_used_ = std::max(bits_used_, bits);
            MpfrVal t(bits), at(bits), acc(bits), s(bits), ck(bits), err(bits);
            bool exact_eval = mpfr_set_q(t.get(), x.backend().data(), MPFR_RNDN) == 0;
            mpfr_abs(at.get(), t.get(), MPFR_RNDU);
            mpfr_set_zero(acc.get(), 1);
            mpfr_set_zero(s.get(), 1);
            for (std::size_t k = n; k-- > 0;) {
                exact_eval &= mpfr_set_q(ck.get(), q.c[k].backend().data(), MPFR_RNDN) == 0;
                exact_eval &= mpfr_fma(acc.get(), acc.get(), t.get(), ck.get(), MPFR_RNDN) == 0;
                mpfr_mul(s.get(), s.get(), at.get(), MPFR_RNDU);
                mpfr_abs(ck.get(), ck.get(), MPFR_RNDU);
                mpfr_add(s.get(), s.get(), ck.get(), MPFR_RNDU);
            }
            if (exact_eval) return mpfr_sgn(acc.get());
            mpfr_mul_d(err.get(), s.get(), 4.0 * static_cast<double>(n) + 8.0, MPFR_RNDU);
            mpfr_mul_2si(err.get(), err.get(), 1 - bits, MPFR_RNDU);
            if (mpfr_cmpabs(acc.get(), err.get()) > 0) return mpfr_sgn(acc.get()) > 0 ? 1 : -1;
        }
        const auto den_bits = static_cast<double>(
            mpz_sizeinbase(mpq_denref(x.backend().data()), 2));
        const double nn = static_cast<double>(n);
        if (nn * nn * std::max(den_bits, 64.0) > 1e12) return kSignUndecided;
        Rational acc(0);
        for (std::size_t k = n; k-- > 0;) acc = acc * x + q.c[k];
        return acc.sign();
    }
};

/// Count roots of a polynomial in a bounded interval by certified bisection.
/// precision_bits is the starting MPFR precision for escalation (doubling up
/// to the cap); certified=false in the result means the cap was hit, which
/// happens exactly for clustered/multiple roots.
inline CertifiedCount bisection_count(const DPoly& poly, const IntervalSpec& interval,
                                      int precision_bits = 128) {
    CertifiedCounter counter(poly, BisectionLimits{precision_bits, 4096});
    return counter.count(interval);
}

inline CertifiedCount bisection_count(const QPoly& poly, const IntervalSpec& interval,
                                      int precision_bits = 128) {
    CertifiedCounter counter(poly, BisectionLimits{precision_bits, 4096});
    return counter.count(interval);
}

// ---- Jensen's root-count bound ---------------------------------------------

struct DInterval {
    double lo = 0.0, hi = 0.0;
};

/// Upper bound on the number of zeros of an analytic f in B(z,r) from
/// enclosures of |f| on the circle |w-z| = R plus a modulus-of-continuity pad:
///   N_f(B(z,r)) <= log(sup_{B(z,R)} |f| / |f(z)|) / log(R/r).
/// boundary_abs(theta) must enclose |f(z + R e^{i theta})|; lipschitz bounds
/// |f'| on the closed R-disk.  Throws if the center enclosure contains 0.
inline double jensen_bound(const std::function<DInterval(double)>& boundary_abs,
                           DInterval center_abs, double lipschitz, double r, double R,
                           int grid = 128) {
    if (!(r > 0) || !(R > r)) throw std::invalid_argument("jensen_bound: need 0 < r < R");
    if (!(center_abs.lo > 0))
        throw std::invalid_argument("jensen_bound: |f(z)| enclosure contains 0");
    double sup = 0.0;
    for (int i = 0; i < grid; ++i) {
        double theta = 2.0 * M_PI * i / grid;
        sup = std::max(sup, boundary_abs(theta).hi);
    }
    sup += lipschitz * (M_PI * R / grid);  // grid points are within piR/grid of any boundary point
    return std::log(sup / center_abs.lo) / std::log(R / r);
}

/// Polynomial convenience form: complex Horner with a running error bound.
inline double jensen_bound(const DPoly& f, std::complex<double> z, double r, double R,
                           int grid = 128) {
    const std::size_t n = f.c.size();
    auto abs_enclosure = [&](std::complex<double> w) {
        std::complex<double> acc(0.0, 0.0);
        double s = 0.0;
        const double aw = std::abs(w);
        for (std::size_t k = n; k-- > 0;) {
            acc = acc * w + f.c[k];
            s = s * aw + std::fabs(f.c[k]);
        }
        double err = s * (8.0 * static_cast<double>(n) + 16.0) * certify_detail::kUlp + 1e-300;
        double a = std::abs(acc);
        return DInterval{std::max(0.0, a - err), a + err};
    };
    double rho = std::abs(z) + R;
    double lip = 0.0;
    for (std::size_t k = n; k-- > 1;) lip = lip * rho + static_cast<double>(k) * std::fabs(f.c[k]);
    lip *= 1.0 + 1e-10;
    auto boundary = [&](double theta) {
        return abs_enclosure(z + R * std::complex<double>(std::cos(theta), std::sin(theta)));
    };
    return jensen_bound(boundary, abs_enclosure(z), lip, r, R, grid);
}

}  // namespace kaclab
