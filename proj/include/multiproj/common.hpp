#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace multiproj {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using IntVector = std::vector<Integer>;
using RatVector = std::vector<Rational>;

/// Malformed or inconsistent input (CLI exit code 2).
class InputError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// A configured size limit was exceeded (CLI exit code 3).
class LimitExceeded : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Size limits for the exponential parts of the library.
///
/// Defaults can be overridden through the MULTIPROJ_LIMITS environment
/// variable, a comma separated list of `key=value` pairs, e.g.
/// `MULTIPROJ_LIMITS="max_vars=24,max_charts=40"`.
struct Limits {
    std::size_t max_vars = 20;            // square-free support enumeration
    std::size_t max_charts = 25;          // maximal separated subcollections
    std::size_t max_chamber_rank = 6;     // chamber enumeration, rank of D
    std::size_t max_chamber_vars = 12;    // chamber enumeration, variables
    std::size_t max_lattice_points = 200000;  // parallelepiped enumeration

    static Limits from_string(std::string_view text) {
        Limits limits;
        std::size_t pos = 0;
        while (pos < text.size()) {
            std::size_t end = text.find(',', pos);
            if (end == std::string_view::npos) end = text.size();
            std::string_view item = text.substr(pos, end - pos);
            pos = end + 1;
            if (item.empty()) continue;
            std::size_t eq = item.find('=');
            if (eq == std::string_view::npos)
                throw InputError("MULTIPROJ_LIMITS: expected key=value, got '" + std::string(item) + "'");
            std::string key(item.substr(0, eq));
            std::string value(item.substr(eq + 1));
            std::size_t parsed = 0;
            try {
                std::size_t used = 0;
                parsed = std::stoul(value, &used);
                if (used != value.size()) throw std::invalid_argument(value);
            } catch (const std::exception&) {
                throw InputError("MULTIPROJ_LIMITS: invalid value for " + key);
            }
            if (key == "max_vars") limits.max_vars = parsed;
            else if (key == "max_charts") limits.max_charts = parsed;
            else if (key == "max_chamber_rank") limits.max_chamber_rank = parsed;
            else if (key == "max_chamber_vars") limits.max_chamber_vars = parsed;
            else if (key == "max_lattice_points") limits.max_lattice_points = parsed;
            else throw InputError("MULTIPROJ_LIMITS: unknown key " + key);
        }
        return limits;
    }

    static Limits from_env() {
        const char* text = std::getenv("MULTIPROJ_LIMITS");
        return text ? from_string(text) : Limits{};
    }
};

namespace detail {

inline Integer abs(const Integer& x) { return x < 0 ? Integer(-x) : x; }

/// Floor division for arbitrary signs.
inline Integer floor_div(const Integer& a, const Integer& b) {
    Integer q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

inline Integer floor_mod(const Integer& a, const Integer& b) {
    Integer r = a % b;
    if (r != 0 && ((r < 0) != (b < 0))) r += b;
    return r;
}

}  // namespace detail

inline Integer dot(const IntVector& a, const IntVector& b) {
    Integer s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline bool is_zero(const IntVector& v) {
    return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; });
}

inline Integer content(const IntVector& v) {
    Integer g = 0;
    for (const auto& x : v) g = boost::multiprecision::gcd(g, x);
    return detail::abs(g);
}

/// Divides by the gcd of the entries; the zero vector is returned unchanged.
inline IntVector primitive(IntVector v) {
    Integer g = content(v);
    if (g > 1)
        for (auto& x : v) x /= g;
    return v;
}

/// Scales a rational vector by the positive lcm of its denominators.
inline IntVector clear_denominators(const RatVector& v) {
    Integer l = 1;
    for (const auto& x : v) l = boost::multiprecision::lcm(l, Integer(denominator(x)));
    IntVector out;
    out.reserve(v.size());
    for (const auto& x : v) out.push_back(Integer(numerator(x)) * (l / Integer(denominator(x))));
    return out;
}

inline IntVector operator+(IntVector a, const IntVector& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return a;
}

inline IntVector operator-(IntVector a, const IntVector& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
    return a;
}

inline IntVector operator-(IntVector a) {
    for (auto& x : a) x = -x;
    return a;
}

inline IntVector operator*(const Integer& c, IntVector a) {
    for (auto& x : a) x *= c;
    return a;
}

inline IntVector to_int_vector(const std::vector<long long>& v) {
    return IntVector(v.begin(), v.end());
}

}  // namespace multiproj
