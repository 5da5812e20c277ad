#pragma once

#include <boost/math/special_functions/erf.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "kaclab/quadrature.hpp"
#include "kaclab/rational.hpp"
#include "kaclab/rng.hpp"

namespace kaclab {

enum class LawKind { DiscreteAtoms, ContinuousBuiltin };
enum class BuiltinDensity { None, Gaussian, UniformSym };

struct Atom {
    double value = 0.0;
    Rational mass;  // exact
};

struct Moments {
    double mean = 0.0;
    double variance = 0.0;
    double abs_moment = 0.0;  // E|xi|^{2+eps0}
};

/// Standard normal quantile. u in (0,1); relative accuracy ~1e-16 via the
/// complementary route (1-u is exact for u >= 1/2 by Sterbenz).
inline double normal_quantile(double u) {
    if (!(u > 0.0 && u < 1.0)) throw std::invalid_argument("normal_quantile: u outside (0,1)");
    if (u < 0.5) return -std::sqrt(2.0) * boost::math::erfc_inv(2.0 * u);
    return std::sqrt(2.0) * boost::math::erfc_inv(2.0 * (1.0 - u));
}

/// A mean-zero, unit-variance coefficient distribution.  Discrete laws carry
/// exact rational masses; atom values are doubles and all downstream exact
/// arithmetic reads them as the dyadic rationals they are.
class CoefficientLaw {
public:
    std::string name;
    LawKind kind = LawKind::DiscreteAtoms;
    BuiltinDensity builtin = BuiltinDensity::None;
    std::vector<Atom> atoms;   // sorted by value (discrete only)
    double zero_mass = 0.0;    // P(xi = 0)
    double eps0 = 1.0;         // the (2+eps0)-moment exponent offset
    double m0_bound = 0.0;     // declared bound M0 on E|xi|^{2+eps0}

    /// Left-continuous generalized inverse of the distribution function.
    double quantile(double u) const {
        if (!(u > 0.0 && u < 1.0)) throw std::invalid_argument("quantile: u outside (0,1)");
        switch (builtin) {
            case BuiltinDensity::Gaussian: return normal_quantile(u);
            case BuiltinDensity::UniformSym: return std::sqrt(3.0) * (2.0 * u - 1.0);
            case BuiltinDensity::None: break;
        }
        auto it = std::lower_bound(cum_.begin(), cum_.end(), u);
        std::size_t idx = static_cast<std::size_t>(it - cum_.begin());
        if (idx >= atoms.size()) idx = atoms.size() - 1;
        return atoms[idx].value;
    }

    /// count i.i.d. draws by inverse transform from the trial's uniforms,
    /// starting at the stream's cursor.
    void sample(CouplingStream& stream, std::span<double> out) const {
        switch (builtin) {
            case BuiltinDensity::Gaussian:
                for (double& x : out) x = normal_quantile(stream.next());
                return;
            case BuiltinDensity::UniformSym: {
                const double s3 = std::sqrt(3.0);
                for (double& x : out) x = s3 * (2.0 * stream.next() - 1.0);
                return;
            }
            case BuiltinDensity::None: break;
        }
        for (double& x : out) {
            double u = stream.next();
            auto it = std::lower_bound(cum_.begin(), cum_.end(), u);
            std::size_t idx = static_cast<std::size_t>(it - cum_.begin());
            if (idx >= atoms.size()) idx = atoms.size() - 1;
            x = atoms[idx].value;
        }
    }

    std::vector<double> sample(CouplingStream stream, std::size_t count) const {
        if (count < 1) throw std::invalid_argument("sample: count must be >= 1");
        std::vector<double> out(count);
        sample(stream, std::span<double>(out));
        return out;
    }

    double max_abs_value() const {
        if (kind == LawKind::ContinuousBuiltin)
            return builtin == BuiltinDensity::UniformSym ? std::sqrt(3.0)
                                                         : std::numeric_limits<double>::infinity();
        double m = 0.0;
        for (const auto& a : atoms) m = std::max(m, std::fabs(a.value));
        return m;
    }

    /// Sorts atoms, derives cached breakpoints / zero_mass / M0, and checks
    /// the law invariants.  Throws std::invalid_argument on violation.
    void finalize();

private:
    std::vector<double> cum_;  // cumulative masses rounded to nearest, last forced to 1
    friend Moments validate_moments(const CoefficientLaw&);
};

/// Exact finite sums for discrete laws, adaptive quadrature against the
/// density for continuous builtins.  Throws if the mean-0 / variance-1 /
/// moment-bound invariants fail.
inline Moments validate_moments(const CoefficientLaw& law) {
    Moments m;
    if (law.kind == LawKind::DiscreteAtoms) {
        Rational mean(0), var(0), abs3(0), mass_sum(0);
        for (const auto& a : law.atoms) {
            Rational v = rational_from_double(a.value);
            mean += a.mass * v;
            var += a.mass * v * v;
            Rational av = v < 0 ? Rational(-v) : v;
            abs3 += a.mass * av * av * av;  // eps0 = 1 for all builtins
            mass_sum += a.mass;
        }
        if (mass_sum != 1) throw std::invalid_argument("law '" + law.name + "': atom masses do not sum to 1");
        m.mean = to_double(mean);
        m.variance = to_double(var);
        m.abs_moment = to_double(abs3);
    } else {
        std::function<double(double)> density;
        double hi = 0.0;
        if (law.builtin == BuiltinDensity::Gaussian) {
            density = [](double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI); };
            hi = 40.0;
        } else {
            density = [](double x) { return 1.0 / (2.0 * std::sqrt(3.0)); };
            hi = std::sqrt(3.0);
        }
        auto moment = [&](double p) {
            auto f = [&](double x) { return std::pow(x, p) * density(x); };
            return 2.0 * integrate(f, 0.0, hi, 1e-14, 1e-13).value;  // symmetric
        };
        m.mean = 0.0;  // symmetric density
        m.variance = moment(2.0);
        m.abs_moment = moment(2.0 + law.eps0);
    }
    if (std::fabs(m.mean) > 1e-12)
        throw std::invalid_argument("law '" + law.name + "': mean " + std::to_string(m.mean) + " violates mean-0");
    if (std::fabs(m.variance - 1.0) > 1e-12)
        throw std::invalid_argument("law '" + law.name + "': variance " + std::to_string(m.variance) +
                                    " violates variance-1");
    if (law.m0_bound > 0.0 && m.abs_moment > law.m0_bound * (1.0 + 1e-12) + 1e-12)
        throw std::invalid_argument("law '" + law.name + "': E|xi|^(2+eps0) " + std::to_string(m.abs_moment) +
                                    " exceeds declared bound " + std::to_string(law.m0_bound));
    return m;
}

inline void CoefficientLaw::finalize() {
    if (kind == LawKind::DiscreteAtoms) {
        if (atoms.empty()) throw std::invalid_argument("law '" + name + "': no atoms");
        std::sort(atoms.begin(), atoms.end(),
                  [](const Atom& a, const Atom& b) { return a.value < b.value; });
        for (std::size_t i = 0; i + 1 < atoms.size(); ++i)
            if (atoms[i].value == atoms[i + 1].value)
                throw std::invalid_argument("law '" + name + "': duplicate atom value");
        Rational acc(0);
        cum_.clear();
        zero_mass = 0.0;
        for (const auto& a : atoms) {
            if (a.mass <= 0) throw std::invalid_argument("law '" + name + "': nonpositive atom mass");
            acc += a.mass;
            cum_.push_back(to_double(acc));
            if (a.value == 0.0) zero_mass = to_double(a.mass);
        }
        if (acc != 1) throw std::invalid_argument("law '" + name + "': atom masses do not sum to 1");
        cum_.back() = 1.0;
        if (zero_mass >= 1.0) throw std::invalid_argument("law '" + name + "': zero_mass must be < 1");
    } else {
        zero_mass = 0.0;
        cum_.clear();
    }
    Moments m = validate_moments(*this);  // checks mean/variance before M0 is set
    if (m0_bound <= 0.0) m0_bound = m.abs_moment;
    validate_moments(*this);
}

// ---- builtin families ------------------------------------------------------

inline CoefficientLaw make_gaussian() {
    CoefficientLaw law;
    law.name = "gaussian";
    law.kind = LawKind::ContinuousBuiltin;
    law.builtin = BuiltinDensity::Gaussian;
    law.finalize();
    return law;
}

inline CoefficientLaw make_uniform_sym() {
    CoefficientLaw law;
    law.name = "uniform-sym";
    law.kind = LawKind::ContinuousBuiltin;
    law.builtin = BuiltinDensity::UniformSym;
    law.finalize();
    return law;
}

inline CoefficientLaw make_rademacher() {
    CoefficientLaw law;
    law.name = "rademacher";
    law.atoms = {{-1.0, Rational(1, 2)}, {1.0, Rational(1, 2)}};
    law.finalize();
    return law;
}

/// Atomic law matching the first four Gaussian moments:
/// P(X = +-1/sqrt(2)) = 4/9 each, P(X = +-sqrt(5)) = 1/18 each.
inline CoefficientLaw make_four_moment() {
    CoefficientLaw law;
    law.name = "four-moment";
    const double v1 = 1.0 / std::sqrt(2.0), v2 = std::sqrt(5.0);
    law.atoms = {{-v2, Rational(1, 18)}, {-v1, Rational(4, 9)}, {v1, Rational(4, 9)}, {v2, Rational(1, 18)}};
    law.finalize();
    return law;
}

/// Symmetric law on {0, +-1/sqrt(1-q)}: mass q at zero, (1-q)/2 on each side,
/// rescaled so the variance is exactly one.
inline CoefficientLaw make_ternary(double q) {
    if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("ternary: q must lie in (0,1)");
    CoefficientLaw law;
    std::ostringstream nm;
    nm << "ternary(" << q << ")";
    law.name = nm.str();
    Rational qr = rational_from_double(q);
    Rational side = (Rational(1) - qr) / 2;
    double v = 1.0 / std::sqrt(1.0 - q);
    law.atoms = {{-v, side}, {0.0, qr}, {v, side}};
    law.finalize();
    return law;
}

/// Mass p at zero, +-1/sqrt(1-p) with mass (1-p)/2 each. p = 0 degenerates to
/// the Rademacher law.
inline CoefficientLaw make_zero_atom(double p) {
    if (!(p >= 0.0 && p < 1.0)) throw std::invalid_argument("zero-atom: p must lie in [0,1)");
    if (p == 0.0) {
        CoefficientLaw law = make_rademacher();
        law.name = "zero-atom(0)";
        return law;
    }
    CoefficientLaw law = make_ternary(p);
    std::ostringstream nm;
    nm << "zero-atom(" << p << ")";
    law.name = nm.str();
    return law;
}

/// m-point quantile discretization of the standard normal: atoms at
/// Phi^{-1}((i-1/2)/m) with mass 1/m, rescaled to restore unit variance.
inline CoefficientLaw make_gaussian_discretization(int m) {
    if (m < 2) throw std::invalid_argument("gaussian discretization: need m >= 2");
    CoefficientLaw law;
    std::ostringstream nm;
    nm << "gaussian-q" << m;
    law.name = nm.str();
    std::vector<double> raw(static_cast<std::size_t>(m));
    double var = 0.0;
    for (int i = 0; i < m; ++i) {
        raw[static_cast<std::size_t>(i)] = normal_quantile((i + 0.5) / m);
        var += raw[static_cast<std::size_t>(i)] * raw[static_cast<std::size_t>(i)];
    }
    var /= m;
    const double scale = 1.0 / std::sqrt(var);
    Rational mass(1, m);
    for (int i = 0; i < m; ++i) {
        double v = raw[static_cast<std::size_t>(i)] * scale;
        if (2 * i + 1 == m) v = 0.0;  // center atom of an odd grid is exactly zero
        law.atoms.push_back({v, mass});
    }
    // enforce exact symmetry so the mean is zero by construction
    for (int i = 0; i < m / 2; ++i)
        law.atoms[static_cast<std::size_t>(i)].value =
            -law.atoms[static_cast<std::size_t>(m - 1 - i)].value;
    // exact-rational variance of the dyadic atom values is within 1e-12 of 1
    law.finalize();
    return law;
}

/// Builtin laws referenced by name: gaussian | rademacher | uniform-sym |
/// four-moment | ternary(q) | zero-atom(p) | gaussian-qM.
inline CoefficientLaw builtin_law(const std::string& spec) {
    if (spec == "gaussian") return make_gaussian();
    if (spec == "rademacher") return make_rademacher();
    if (spec == "uniform-sym") return make_uniform_sym();
    if (spec == "four-moment") return make_four_moment();
    auto parse_arg = [&](const std::string& prefix) -> double {
        std::string inner = spec.substr(prefix.size() + 1, spec.size() - prefix.size() - 2);
        std::size_t pos = 0;
        double v = std::stod(inner, &pos);
        if (pos != inner.size()) throw std::invalid_argument("bad law parameter: " + spec);
        return v;
    };
    if (spec.rfind("ternary(", 0) == 0 && spec.back() == ')') return make_ternary(parse_arg("ternary"));
    if (spec.rfind("zero-atom(", 0) == 0 && spec.back() == ')') return make_zero_atom(parse_arg("zero-atom"));
    if (spec.rfind("gaussian-q", 0) == 0) {
        int m = std::stoi(spec.substr(10));
        return make_gaussian_discretization(m);
    }
    throw std::invalid_argument("unknown law: " + spec);
}

}  // namespace kaclab
