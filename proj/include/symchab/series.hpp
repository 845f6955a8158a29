#ifndef SYMCHAB_SERIES_HPP
#define SYMCHAB_SERIES_HPP

#include <algorithm>
#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "valuation.hpp"

namespace symchab::core {

inline constexpr std::size_t max_series_dim = 4;

/// Exponent u of a monomial x^u; entries are nonnegative.
class ExponentVec {
public:
    ExponentVec() = default;
    explicit ExponentVec(std::vector<int> e) : e_(std::move(e)) {
        for (int x : e_)
            if (x < 0) throw InputError("negative exponent");
    }
    ExponentVec(std::initializer_list<int> e) : ExponentVec(std::vector<int>(e)) {}

    /// n * e_i in dimension d.
    static ExponentVec axis(std::size_t d, std::size_t i, int n) {
        std::vector<int> e(d, 0);
        e.at(i) = n;
        return ExponentVec(std::move(e));
    }

    std::size_t size() const { return e_.size(); }
    int operator[](std::size_t i) const { return e_[i]; }
    const std::vector<int>& entries() const { return e_; }

    /// Number of variables that actually occur.
    std::size_t support_size() const {
        return static_cast<std::size_t>(std::count_if(e_.begin(), e_.end(), [](int x) { return x != 0; }));
    }
    bool is_constant() const { return support_size() == 0; }

    Point as_point() const {
        Point p;
        p.reserve(e_.size());
        for (int x : e_) p.emplace_back(x);
        return p;
    }

    Rational pair(const Point& w) const {
        Rational s = 0;
        for (std::size_t i = 0; i < e_.size(); ++i)
            if (e_[i] != 0) s += w[i] * e_[i];
        return s;
    }

    std::string str() const {
        std::string s = "(";
        for (std::size_t i = 0; i < e_.size(); ++i) s += (i ? "," : "") + std::to_string(e_[i]);
        return s + ")";
    }

    auto operator<=>(const ExponentVec&) const = default;

private:
    std::vector<int> e_;
};

/// One stored term a_u x^u: its valuation and, when known, its exact value.
struct ValuedTerm {
    ExponentVec exponent;
    Val coeff_val;
    std::optional<Rational> coeff_exact;

    /// v(a_u) + <u, w>
    Val weight(const Point& w) const { return coeff_val + exponent.pair(w); }

    friend bool operator==(const ValuedTerm&, const ValuedTerm&) = default;
};

inline ValuedTerm exact_term(ExponentVec u, const Rational& c, long long p) {
    if (c == 0) throw InputError("zero coefficient for exponent " + u.str());
    Val v = val_p(c, p);
    return ValuedTerm{std::move(u), std::move(v), c};
}

inline ValuedTerm valued_term(ExponentVec u, const Rational& v) {
    return ValuedTerm{std::move(u), Val(v), std::nullopt};
}

/// The box P_m = { w : w_i >= m_i } of weights, m_i >= 0.
struct BoxDomain {
    std::vector<Rational> m;

    static BoxDomain orthant(std::size_t d) { return BoxDomain{std::vector<Rational>(d, Rational(0))}; }
    static BoxDomain uniform(std::size_t d, const Rational& lo) { return BoxDomain{std::vector<Rational>(d, lo)}; }

    std::size_t dim() const { return m.size(); }

    void validate() const {
        for (const auto& x : m)
            if (x < 0) throw InputError("box domain corner must be nonnegative");
    }

    bool contains(const Point& w) const {
        if (w.size() != m.size()) return false;
        for (std::size_t i = 0; i < m.size(); ++i)
            if (w[i] < m[i]) return false;
        return true;
    }

    friend bool operator==(const BoxDomain&, const BoxDomain&) = default;
};

/// Justifies why the unstored part of a series is irrelevant to vert sets.
struct TailCertificate {
    enum class Kind { polynomial, pure_integral_derivative };

    /// Per-variable data of a pure series: every variable's part is the
    /// antiderivative of an integral series whose reduction has order k - 1.
    struct VariableTail {
        long long k = 1;
        bool integral_derivative = true;
        friend bool operator==(const VariableTail&, const VariableTail&) = default;
    };

    Kind kind = Kind::polynomial;
    std::vector<VariableTail> vars; // empty for polynomial kind

    static TailCertificate polynomial() { return {}; }
    static TailCertificate pure(const std::vector<long long>& ks) {
        TailCertificate t;
        t.kind = Kind::pure_integral_derivative;
        for (auto k : ks) t.vars.push_back({k, true});
        return t;
    }

    bool is_polynomial() const { return kind == Kind::polynomial; }

    friend bool operator==(const TailCertificate&, const TailCertificate&) = default;
};

/// A nonzero sparse power series over Q_p (or an unramified extension, via
/// valuation-only coefficients), stored as a finite support plus a tail
/// certificate.
class ValuedSeries {
public:
    ValuedSeries(long long prime, std::size_t dim, std::vector<ValuedTerm> terms,
                 TailCertificate tail = TailCertificate::polynomial(), bool pure = false)
        : prime_(prime), dim_(dim), terms_(std::move(terms)), tail_(std::move(tail)), pure_(pure) {
        validate();
    }

    /// Polynomial with exact coefficients.
    static ValuedSeries exact(long long prime, std::size_t dim,
                              const std::vector<std::pair<ExponentVec, Rational>>& coeffs,
                              bool pure = false) {
        std::vector<ValuedTerm> t;
        for (const auto& [u, c] : coeffs) t.push_back(exact_term(u, c, prime));
        return ValuedSeries(prime, dim, std::move(t), TailCertificate::polynomial(), pure);
    }

    long long prime() const { return prime_; }
    std::size_t dim() const { return dim_; }
    const std::vector<ValuedTerm>& terms() const { return terms_; }
    const TailCertificate& tail() const { return tail_; }
    bool is_pure() const { return pure_; }
    bool is_polynomial() const { return tail_.is_polynomial(); }

    const ValuedTerm* find(const ExponentVec& u) const {
        auto it = std::lower_bound(terms_.begin(), terms_.end(), u,
                                   [](const ValuedTerm& t, const ExponentVec& e) { return t.exponent < e; });
        return (it != terms_.end() && it->exponent == u) ? &*it : nullptr;
    }

    /// Largest stored exponent of the pure power x_i^n (0 if none).
    int stored_degree(std::size_t i) const {
        int best = 0;
        for (const auto& t : terms_)
            if (t.exponent.support_size() == 1 && t.exponent[i] > best) best = t.exponent[i];
        return best;
    }

    bool all_exact() const {
        return std::all_of(terms_.begin(), terms_.end(), [](const ValuedTerm& t) { return t.coeff_exact.has_value(); });
    }

    /// Exact evaluation at a rational point; needs exact coefficients and polynomial kind.
    Rational evaluate(const Point& x) const {
        if (!is_polynomial() || !all_exact())
            throw InputError("evaluate needs an exact polynomial");
        if (x.size() != dim_) throw InputError("evaluate: point has wrong dimension");
        Rational s = 0;
        for (const auto& t : terms_) {
            Rational m = *t.coeff_exact;
            for (std::size_t i = 0; i < dim_; ++i)
                for (int e = 0; e < t.exponent[i]; ++e) m *= x[i];
            s += m;
        }
        return s;
    }

    friend bool operator==(const ValuedSeries&, const ValuedSeries&) = default;

private:
    void validate() {
        require_prime(prime_);
        if (dim_ == 0 || dim_ > max_series_dim)
            throw InputError("series dimension must be in 1.." + std::to_string(max_series_dim));
        if (terms_.empty()) throw InputError("the zero series is not allowed");
        for (const auto& t : terms_) {
            if (t.exponent.size() != dim_)
                throw InputError("exponent " + t.exponent.str() + " has wrong length");
            if (t.coeff_val.is_infinite())
                throw InputError("term " + t.exponent.str() + " has infinite valuation");
            if (t.coeff_exact) {
                if (*t.coeff_exact == 0) throw InputError("zero coefficient at " + t.exponent.str());
                if (val_p(*t.coeff_exact, prime_) != t.coeff_val)
                    throw InputError("valuation of " + t.exponent.str() + " does not match its coefficient");
            }
            if (pure_ && t.exponent.support_size() > 1)
                throw InputError("pure series has mixed term " + t.exponent.str());
        }
        std::sort(terms_.begin(), terms_.end(),
                  [](const ValuedTerm& a, const ValuedTerm& b) { return a.exponent < b.exponent; });
        for (std::size_t i = 1; i < terms_.size(); ++i)
            if (terms_[i].exponent == terms_[i - 1].exponent)
                throw InputError("duplicate exponent " + terms_[i].exponent.str());
        if (tail_.is_polynomial()) {
            if (!tail_.vars.empty()) throw InputError("polynomial tail carries per-variable data");
            return;
        }
        if (!pure_) throw InputError("a pure tail certificate needs a pure series");
        if (tail_.vars.size() != dim_) throw InputError("tail certificate has wrong length");
        for (std::size_t i = 0; i < dim_; ++i) {
            const auto& vt = tail_.vars[i];
            if (vt.k < 1) throw InputError("tail certificate needs k >= 1");
            if (!vt.integral_derivative) throw InputError("tail certificate needs an integral derivative");
            const auto* lead = find(ExponentVec::axis(dim_, i, static_cast<int>(vt.k)));
            if (!lead || lead->coeff_val != Val(Rational(-ord_p(Integer(vt.k), prime_))))
                throw InputError("tail certificate: term of degree k in variable " + std::to_string(i + 1) +
                                 " must have valuation -v_p(k)");
            for (const auto& t : terms_) {
                if (t.exponent.support_size() != 1 || t.exponent[i] == 0) continue;
                const int n = t.exponent[i];
                const Rational floor_val = Rational(-ord_p(Integer(n), prime_) + (n < vt.k ? 1 : 0));
                if (t.coeff_val.value() < floor_val)
                    throw InputError("term " + t.exponent.str() + " contradicts the integral-derivative certificate");
            }
        }
    }

    long long prime_;
    std::size_t dim_;
    std::vector<ValuedTerm> terms_;
    TailCertificate tail_;
    bool pure_;
};

} // namespace symchab::core

#endif // SYMCHAB_SERIES_HPP
