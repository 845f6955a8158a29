#ifndef SYMCHAB_VALUATION_HPP
#define SYMCHAB_VALUATION_HPP

#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

#include "rational.hpp"

namespace symchab::core {

/// A value of the p-adic valuation: a rational number or +infinity.
class Val {
public:
    Val() = default; // +infinity
    Val(const Rational& v) : v_(v) {}
    Val(long long v) : v_(Rational(v)) {}

    static Val infinity() { return Val(); }

    bool is_infinite() const { return !v_.has_value(); }
    bool is_finite() const { return v_.has_value(); }

    const Rational& value() const {
        if (!v_) throw InputError("value() of infinite valuation");
        return *v_;
    }

    friend Val operator+(const Val& a, const Val& b) {
        if (a.is_infinite() || b.is_infinite()) return Val();
        return Val(*a.v_ + *b.v_);
    }
    friend Val operator+(const Val& a, const Rational& b) { return a + Val(b); }

    friend bool operator==(const Val& a, const Val& b) { return a.v_ == b.v_; }
    friend std::strong_ordering operator<=>(const Val& a, const Val& b) {
        if (a.is_infinite()) return b.is_infinite() ? std::strong_ordering::equal
                                                    : std::strong_ordering::greater;
        if (b.is_infinite()) return std::strong_ordering::less;
        if (*a.v_ < *b.v_) return std::strong_ordering::less;
        if (*a.v_ > *b.v_) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    std::string str() const { return v_ ? to_string(*v_) : std::string("+inf"); }
    friend std::ostream& operator<<(std::ostream& os, const Val& v) { return os << v.str(); }

private:
    std::optional<Rational> v_;
};

inline Val min(const Val& a, const Val& b) { return b < a ? b : a; }

inline bool is_prime(long long p) {
    if (p < 2) return false;
    for (long long d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

inline void require_prime(long long p) {
    if (!is_prime(p)) throw InputError("not a prime: " + std::to_string(p));
}

/// Exponent of p in a nonzero integer. No primality check.
inline long long ord_p(Integer n, long long p) {
    if (n == 0) throw InputError("ord_p of zero");
    if (n < 0) n = -n;
    long long e = 0;
    while (n % p == 0) {
        n /= p;
        ++e;
    }
    return e;
}

/// p-adic valuation of an exact rational; +infinity for 0.
inline Val val_p(const Rational& x, long long p) {
    require_prime(p);
    if (x == 0) return Val::infinity();
    return Val(Rational(ord_p(num(x), p) - ord_p(den(x), p)));
}

/// Largest N >= 0 with v_p(k+N) >= N*slope + v_p(k), for rational slope > 0.
///
/// This is the depth past exponent k beyond which a term c/(k+N) t^(k+N) with
/// integral c can never tie or beat the term of exponent k at any weight
/// w >= slope. With slope = 1/l it is the delta of the truncation bound in the
/// limit eps -> 0+ (non-strict inequality).
inline long long truncation_depth(long long k, long long p, const Rational& slope) {
    require_prime(p);
    if (k < 1) throw InputError("truncation_depth needs k >= 1");
    if (slope <= 0) throw InputError("truncation_depth needs a positive slope");
    const long long vk = ord_p(Integer(k), p);
    const Integer a = num(slope), b = den(slope);
    long long best = 0;
    for (long long n = 1;; ++n) {
        const long long kn = k + n;
        if (Rational(ord_p(Integer(kn), p)) >= slope * n + vk) best = n;
        // Past (k+n)*slope >= 2 the gap n*slope - log_p(k+n) is increasing, and once
        // p^(n*slope) > k+n no later n can pass.
        if (Integer(kn) * a >= 2 * b) {
            const auto e = (Integer(n) * a).convert_to<unsigned>();
            const Integer lhs = boost::multiprecision::pow(Integer(p), e);
            const Integer rhs = boost::multiprecision::pow(Integer(kn), b.convert_to<unsigned>());
            if (lhs > rhs) break;
        }
    }
    return best;
}

} // namespace symchab::core

#endif // SYMCHAB_VALUATION_HPP
