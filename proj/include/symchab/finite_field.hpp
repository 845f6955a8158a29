#ifndef SYMCHAB_FINITE_FIELD_HPP
#define SYMCHAB_FINITE_FIELD_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "error.hpp"
#include "valuation.hpp"

namespace symchab::ff {

/// Polynomial over F_p, coefficients low to high, no trailing zeros.
using Poly = std::vector<int>;

inline void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

/// -1 for the zero polynomial.
inline int degree(const Poly& a) { return static_cast<int>(a.size()) - 1; }

inline int mod(long long a, int p) {
    long long r = a % p;
    return static_cast<int>(r < 0 ? r + p : r);
}

inline int inv_mod(int a, int p) {
    long long r = 1, b = mod(a, p), e = p - 2;
    while (e > 0) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return static_cast<int>(r);
}

inline Poly sub(const Poly& a, const Poly& b, int p) {
    Poly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = mod(r[i] - b[i], p);
    trim(r);
    return r;
}

inline Poly add(const Poly& a, const Poly& b, int p) {
    Poly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = mod(r[i] + b[i], p);
    trim(r);
    return r;
}

inline Poly mul(const Poly& a, const Poly& b, int p) {
    if (a.empty() || b.empty()) return {};
    std::vector<long long> r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + 1LL * a[i] * b[j]) % p;
    Poly out(r.begin(), r.end());
    trim(out);
    return out;
}

/// Remainder of a modulo a nonzero b.
inline Poly rem(Poly a, const Poly& b, int p) {
    if (b.empty()) throw InputError("polynomial division by zero");
    const int lead_inv = inv_mod(b.back(), p);
    while (degree(a) >= degree(b)) {
        const int shift = degree(a) - degree(b);
        const long long c = 1LL * a.back() * lead_inv % p;
        for (std::size_t i = 0; i < b.size(); ++i)
            a[i + shift] = mod(a[i + shift] - c * b[i], p);
        trim(a);
    }
    return a;
}

inline Poly derivative(const Poly& a, int p) {
    Poly r;
    for (std::size_t i = 1; i < a.size(); ++i) r.push_back(mod(static_cast<long long>(i) * a[i], p));
    trim(r);
    return r;
}

/// Monic gcd (empty when both inputs are zero).
inline Poly gcd(Poly a, Poly b, int p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        const int c = inv_mod(a.back(), p);
        for (auto& x : a) x = static_cast<int>(1LL * x * c % p);
    }
    return a;
}

inline Poly mulmod(const Poly& a, const Poly& b, const Poly& m, int p) { return rem(mul(a, b, p), m, p); }

/// x^(p^n) mod m.
inline Poly frobenius_power_of_x(const Poly& m, int p, int n) {
    Poly r = rem(Poly{0, 1}, m, p);
    for (int i = 0; i < n; ++i) {
        Poly base = r, acc{1};
        for (int e = p; e > 0; e >>= 1) {
            if (e & 1) acc = mulmod(acc, base, m, p);
            base = mulmod(base, base, m, p);
        }
        r = std::move(acc);
    }
    return r;
}

/// Rabin's test for a monic polynomial of degree n >= 1.
inline bool is_irreducible(const Poly& f, int p) {
    const int n = degree(f);
    if (n < 1) return false;
    if (n == 1) return true;
    const Poly x{0, 1};
    if (!sub(frobenius_power_of_x(f, p, n), rem(x, f, p), p).empty()) return false;
    int rest = n;
    for (int r = 2; r <= rest; ++r) {
        if (rest % r) continue;
        while (rest % r == 0) rest /= r;
        Poly h = sub(frobenius_power_of_x(f, p, n / r), x, p);
        if (degree(gcd(f, h, p)) != 0) return false;
    }
    return true;
}

/// The irreducible monic polynomial of degree e whose coefficient tuple
/// (c_{e-1}, ..., c_0) is lexicographically least.
inline Poly least_irreducible(int p, int e) {
    std::uint64_t count = 1;
    for (int i = 0; i < e; ++i) count *= static_cast<std::uint64_t>(p);
    for (std::uint64_t n = 0; n < count; ++n) {
        Poly f(e + 1, 0);
        f[e] = 1;
        std::uint64_t m = n;
        for (int i = 0; i < e; ++i) {
            f[i] = static_cast<int>(m % p);
            m /= p;
        }
        if (is_irreducible(f, p)) return f;
    }
    throw ComputationError("no irreducible polynomial found");
}

inline constexpr std::uint32_t max_field_size = 1u << 22;

/// F_{p^e} = F_p[x]/(m). An element is the integer sum c_i p^i of its
/// coefficients in the basis 1, x, ..., x^{e-1}, so F_p sits inside as 0..p-1.
class Field {
public:
    using Elem = std::uint32_t;

    Field(long long p, int e) : p_(static_cast<int>(p)), e_(e) {
        core::require_prime(p);
        if (e < 1) throw InputError("field degree must be positive");
        std::uint64_t q = 1;
        for (int i = 0; i < e; ++i) {
            q *= static_cast<std::uint64_t>(p);
            if (q > max_field_size)
                throw InputError("F_" + std::to_string(p) + "^" + std::to_string(e) + " is too large to enumerate");
        }
        q_ = static_cast<Elem>(q);
        modulus_ = least_irreducible(p_, e_);
        build_tables();
    }

    int characteristic() const { return p_; }
    int degree() const { return e_; }
    Elem size() const { return q_; }
    const Poly& modulus() const { return modulus_; }

    Elem from_int(long long a) const { return static_cast<Elem>(mod(a, p_)); }

    Poly to_poly(Elem a) const {
        Poly r(e_, 0);
        for (int i = 0; i < e_; ++i) {
            r[i] = static_cast<int>(a % p_);
            a /= p_;
        }
        trim(r);
        return r;
    }

    Elem from_poly(const Poly& a) const {
        Poly r = rem(a, modulus_, p_);
        Elem out = 0;
        for (int i = degree_of(r); i >= 0; --i) out = out * p_ + static_cast<Elem>(r[i]);
        return out;
    }

    Elem add(Elem a, Elem b) const {
        if (p_ == 2) return a ^ b;
        Elem out = 0, place = 1;
        for (int i = 0; i < e_; ++i) {
            out += place * ((a % p_ + b % p_) % p_);
            a /= p_;
            b /= p_;
            place *= p_;
        }
        return out;
    }

    Elem neg(Elem a) const {
        if (p_ == 2) return a;
        Elem out = 0, place = 1;
        for (int i = 0; i < e_; ++i) {
            out += place * ((p_ - a % p_) % p_);
            a /= p_;
            place *= p_;
        }
        return out;
    }

    Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }

    Elem mul(Elem a, Elem b) const {
        if (a == 0 || b == 0) return 0;
        std::uint64_t s = static_cast<std::uint64_t>(log_[a]) + log_[b];
        if (s >= q_ - 1) s -= q_ - 1;
        return exp_[s];
    }

    Elem inv(Elem a) const {
        if (a == 0) throw InputError("inverse of zero in a finite field");
        return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
    }

    Elem pow(Elem a, std::uint64_t n) const {
        if (n == 0) return 1;
        if (a == 0) return 0;
        return exp_[(static_cast<std::uint64_t>(log_[a]) * (n % (q_ - 1))) % (q_ - 1)];
    }

    Elem frobenius(Elem a) const { return pow(a, static_cast<std::uint64_t>(p_)); }

    /// Discrete log to the fixed primitive element; a must be nonzero.
    std::uint32_t log(Elem a) const { return log_[a]; }
    Elem generator() const { return exp_[1 % (q_ - 1)]; }

    /// 1 for nonzero squares, -1 for nonsquares, 0 for zero (odd p).
    int quadratic_character(Elem a) const {
        if (a == 0) return 0;
        return log_[a] % 2 == 0 ? 1 : -1;
    }

    /// Square roots of a (empty if a is a nonsquare).
    std::vector<Elem> sqrt(Elem a) const {
        if (a == 0) return {0};
        if (p_ == 2) return {pow(a, q_ / 2)};
        if (log_[a] % 2) return {};
        const Elem r = exp_[log_[a] / 2];
        return {r, neg(r)};
    }

    /// Absolute trace to F_p.
    int trace(Elem a) const {
        Elem s = 0, c = a;
        for (int i = 0; i < e_; ++i) {
            s = add(s, c);
            c = frobenius(c);
        }
        return static_cast<int>(s);
    }

    /// Value at a of a polynomial with F_p coefficients.
    Elem eval(const Poly& f, Elem a) const {
        Elem r = 0;
        for (int i = degree_of(f); i >= 0; --i) r = add(mul(r, a), static_cast<Elem>(f[i]));
        return r;
    }

private:
    static int degree_of(const Poly& a) { return static_cast<int>(a.size()) - 1; }

    void build_tables() {
        exp_.assign(q_ - 1 == 0 ? 1 : q_ - 1, 0);
        log_.assign(q_, 0);
        if (q_ == 2) {
            exp_[0] = 1;
            return;
        }
        std::vector<std::uint64_t> factors;
        std::uint64_t n = q_ - 1;
        for (std::uint64_t r = 2; r * r <= n; ++r)
            if (n % r == 0) {
                factors.push_back(r);
                while (n % r == 0) n /= r;
            }
        if (n > 1) factors.push_back(n);
        for (Elem g = 2; g < q_; ++g) {
            const Poly gp = to_poly(g);
            bool primitive = true;
            for (auto r : factors)
                if (slow_pow(gp, (q_ - 1) / r) == Poly{1}) {
                    primitive = false;
                    break;
                }
            if (!primitive) continue;
            Poly cur{1};
            for (Elem i = 0; i < q_ - 1; ++i) {
                const Elem c = from_poly(cur);
                exp_[i] = c;
                log_[c] = i;
                cur = mulmod(cur, gp, modulus_, p_);
            }
            return;
        }
        throw ComputationError("no primitive element found");
    }

    Poly slow_pow(Poly base, std::uint64_t n) const {
        Poly acc{1};
        while (n > 0) {
            if (n & 1) acc = mulmod(acc, base, modulus_, p_);
            base = mulmod(base, base, modulus_, p_);
            n >>= 1;
        }
        return acc;
    }

    int p_;
    int e_;
    Elem q_ = 0;
    Poly modulus_;
    std::vector<Elem> exp_;
    std::vector<std::uint32_t> log_;
};

} // namespace symchab::ff

#endif // SYMCHAB_FINITE_FIELD_HPP
