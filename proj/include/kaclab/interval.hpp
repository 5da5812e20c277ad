#pragma once

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>

namespace kaclab {

/// An interval of the real line. Infinite endpoints are open by convention.
struct IntervalSpec {
    double lo = 0.0;
    double hi = 0.0;
    bool lo_closed = true;
    bool hi_closed = true;

    static IntervalSpec whole_line() {
        return {-std::numeric_limits<double>::infinity(),
                std::numeric_limits<double>::infinity(), false, false};
    }
    static IntervalSpec point_zero() { return {0.0, 0.0, true, true}; }
    static IntervalSpec closed(double a, double b) { return {a, b, true, true}; }
    static IntervalSpec open(double a, double b) { return {a, b, false, false}; }
    static IntervalSpec left_open(double a, double b) { return {a, b, false, true}; }

    bool is_whole_line() const { return std::isinf(lo) && lo < 0 && std::isinf(hi) && hi > 0; }
    bool bounded() const { return std::isfinite(lo) && std::isfinite(hi); }
    bool empty() const { return lo > hi || (lo == hi && !(lo_closed && hi_closed)); }
    bool is_point() const { return lo == hi && lo_closed && hi_closed; }
    bool contains_zero() const {
        if (lo > 0.0 || hi < 0.0) return false;
        if (lo == 0.0 && !lo_closed && hi == 0.0) return false;
        if (lo == 0.0 && !lo_closed) return false;
        if (hi == 0.0 && !hi_closed) return false;
        return true;
    }
    bool contains(const IntervalSpec& other) const {
        bool lo_ok = lo < other.lo || (lo == other.lo && (lo_closed || !other.lo_closed));
        bool hi_ok = hi > other.hi || (hi == other.hi && (hi_closed || !other.hi_closed));
        return lo_ok && hi_ok;
    }
};

namespace detail {
inline double parse_endpoint(const std::string& tok) {
    std::string s = tok;
    s.erase(0, s.find_first_not_of(" \t"));
    s.erase(s.find_last_not_of(" \t") + 1);
    bool negative = false;
    if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
        negative = s[0] == '-';
        s = s.substr(1);
    }
    if (s == "inf" || s == "Inf" || s == "INF" || s == "infinity")
        return negative ? -std::numeric_limits<double>::infinity()
                        : std::numeric_limits<double>::infinity();
    std::size_t pos = 0;
    double v;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("interval: bad endpoint '" + tok + "'");
    }
    if (pos != s.size()) throw std::invalid_argument("interval: bad endpoint '" + tok + "'");
    return negative ? -v : v;
}
}  // namespace detail

/// Grammar: "R" (whole line), "0" (the origin), or bracketed pairs such as
/// "(0,1]", "[1,inf)", "(-inf,-1]".  Infinite endpoints must be open.
inline IntervalSpec parse_interval(const std::string& text) {
    std::string s = text;
    s.erase(0, s.find_first_not_of(" \t"));
    s.erase(s.find_last_not_of(" \t") + 1);
    if (s == "R" || s == "r") return IntervalSpec::whole_line();
    if (s == "0") return IntervalSpec::point_zero();
    if (s.size() < 5) throw std::invalid_argument("interval: cannot parse '" + text + "'");
    char open_ch = s.front(), close_ch = s.back();
    if ((open_ch != '(' && open_ch != '[') || (close_ch != ')' && close_ch != ']'))
        throw std::invalid_argument("interval: cannot parse '" + text + "'");
    auto comma = s.find(',');
    if (comma == std::string::npos)
        throw std::invalid_argument("interval: missing comma in '" + text + "'");
    IntervalSpec iv;
    iv.lo = detail::parse_endpoint(s.substr(1, comma - 1));
    iv.hi = detail::parse_endpoint(s.substr(comma + 1, s.size() - comma - 2));
    iv.lo_closed = open_ch == '[';
    iv.hi_closed = close_ch == ']';
    if (std::isnan(iv.lo) || std::isnan(iv.hi))
        throw std::invalid_argument("interval: NaN endpoint in '" + text + "'");
    if (iv.lo > iv.hi)
        throw std::invalid_argument("interval: lo > hi in '" + text + "'");
    if (std::isinf(iv.lo) && iv.lo_closed)
        throw std::invalid_argument("interval: -inf endpoint must be open");
    if (std::isinf(iv.hi) && iv.hi_closed)
        throw std::invalid_argument("interval: +inf endpoint must be open");
    return iv;
}

inline std::string format_interval(const IntervalSpec& iv) {
    if (iv.is_whole_line()) return "R";
    if (iv.is_point() && iv.lo == 0.0) return "0";
    std::ostringstream out;
    out << (iv.lo_closed ? '[' : '(');
    if (std::isinf(iv.lo))
        out << "-inf";
    else
        out << iv.lo;
    out << ',';
    if (std::isinf(iv.hi))
        out << "inf";
    else
        out << iv.hi;
    out << (iv.hi_closed ? ']' : ')');
    return out.str();
}

/// Quarter-interval classification used for the log-n centering convention:
/// the whole line carries (2/pi) log n, each of the four quarter intervals
/// (-inf,-1], [-1,0], [0,1], [1,inf) carries (1/2pi) log n, endpoints either way.
enum class IntervalClass { WholeLine, Quarter, Other };

inline IntervalClass classify_interval(const IntervalSpec& iv) {
    if (iv.is_whole_line()) return IntervalClass::WholeLine;
    auto near = [](double x, double y) { return x == y; };
    bool q1 = near(iv.lo, 0.0) && near(iv.hi, 1.0);
    bool q2 = near(iv.lo, -1.0) && near(iv.hi, 0.0);
    bool q3 = near(iv.hi, -1.0) && std::isinf(iv.lo);
    bool q4 = near(iv.lo, 1.0) && std::isinf(iv.hi);
    return (q1 || q2 || q3 || q4) ? IntervalClass::Quarter : IntervalClass::Other;
}

/// Coefficient of log n to subtract when extracting the constant term.
inline double centering_slope(const IntervalSpec& iv) {
    switch (classify_interval(iv)) {
        case IntervalClass::WholeLine: return 2.0 / M_PI;
        case IntervalClass::Quarter: return 1.0 / (2.0 * M_PI);
        default:
            throw std::invalid_argument(
                "constant extraction requires R or a quarter interval, got " +
                format_interval(iv));
    }
}

}  // namespace kaclab
