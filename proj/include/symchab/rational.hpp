#ifndef SYMCHAB_RATIONAL_HPP
#define SYMCHAB_RATIONAL_HPP

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"

namespace symchab {

using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

/// A point of Q^d; used both for weight vectors w and polytope vertices.
using Point = std::vector<Rational>;

inline Integer num(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Integer den(const Rational& r) { return boost::multiprecision::denominator(r); }

inline bool is_integer(const Rational& r) { return den(r) == 1; }

inline Integer floor_div(const Integer& a, const Integer& b) {
    Integer q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) q -= 1;
    return q;
}

inline Integer floor(const Rational& r) { return floor_div(num(r), den(r)); }

/// Parses "n", "-n" or "n/d". Throws InputError on anything else.
inline Rational parse_rational(std::string_view text) {
    auto parse_int = [&](std::string_view s) {
        if (s.empty()) throw InputError("empty integer in rational '" + std::string(text) + "'");
        std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (i == s.size()) throw InputError("bad rational '" + std::string(text) + "'");
        for (std::size_t j = i; j < s.size(); ++j)
            if (s[j] < '0' || s[j] > '9')
                throw InputError("bad rational '" + std::string(text) + "'");
        return Integer(std::string(s[0] == '+' ? s.substr(1) : s));
    };
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_int(text));
    Integer n = parse_int(text.substr(0, slash));
    Integer d = parse_int(text.substr(slash + 1));
    if (d == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
    return Rational(n, d);
}

inline std::string to_string(const Rational& r) {
    if (is_integer(r)) return num(r).str();
    return num(r).str() + "/" + den(r).str();
}

inline std::int64_t to_int64(const Rational& r) {
    if (!is_integer(r)) throw ComputationError("expected an integer, got " + to_string(r));
    Integer n = num(r);
    if (n > Integer(INT64_MAX) || n < Integer(INT64_MIN))
        throw ComputationError("integer out of range: " + n.str());
    return n.convert_to<std::int64_t>();
}

inline Rational dot(const Point& a, const Point& b) {
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline Point make_point(std::initializer_list<long long> xs) {
    Point p;
    p.reserve(xs.size());
    for (long long x : xs) p.emplace_back(x);
    return p;
}

} // namespace symchab

#endif // SYMCHAB_RATIONAL_HPP
