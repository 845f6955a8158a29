#ifndef SYMCHAB_CURVE_HPP
#define SYMCHAB_CURVE_HPP

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "finite_field.hpp"
#include "rational.hpp"

namespace symchab::chabauty {

inline constexpr int max_count_degree = 12;

/// Odd hyperelliptic model y^2 + g(x) y = h(x) over Z with deg h = 2*genus + 1
/// and deg g <= genus. Coefficients are listed low to high.
struct CurveSpec {
    int genus = 0;
    long long p = 2;
    std::vector<Integer> h;
    std::vector<Integer> g;
    std::optional<long long> rank_assumption;
    bool assumption_A = false;

    /// Throws InputError on a malformed model. Trailing zero coefficients
    /// are tolerated and ignored.
    void validate() const {
        if (genus < 1) throw InputError("genus must be at least 1");
        core::require_prime(p);
        const int dh = poly_degree(h), dg = poly_degree(g);
        if (dh != 2 * genus + 1)
            throw InputError("deg h must be 2*genus + 1 = " + std::to_string(2 * genus + 1) + ", got " +
                             std::to_string(dh));
        if (dg > genus) throw InputError("deg g must be at most the genus");
        if (rank_assumption && *rank_assumption < 0) throw InputError("rank_assumption must be nonnegative");
    }

    static int poly_degree(const std::vector<Integer>& a) {
        int d = static_cast<int>(a.size()) - 1;
        while (d >= 0 && a[d] == 0) --d;
        return d;
    }

    friend bool operator==(const CurveSpec&, const CurveSpec&) = default;
};

namespace detail {

inline ff::Poly reduce(const std::vector<Integer>& a, long long p) {
    ff::Poly r;
    for (const auto& c : a) {
        Integer m = c % p;
        if (m < 0) m += p;
        r.push_back(static_cast<int>(m));
    }
    ff::trim(r);
    return r;
}

/// 4h + g^2 over Z, so that (2y + g)^2 = f.
inline std::vector<Integer> completed_square(const CurveSpec& C) {
    std::vector<Integer> f(std::max(C.h.size(), 2 * C.g.size()), Integer(0));
    for (std::size_t i = 0; i < C.h.size(); ++i) f[i] += 4 * C.h[i];
    for (std::size_t i = 0; i < C.g.size(); ++i)
        for (std::size_t j = 0; j < C.g.size(); ++j) f[i + j] += C.g[i] * C.g[j];
    return f;
}

} // namespace detail

/// Whether the reduction of the model mod p is smooth, including the single
/// point at infinity.
inline bool good_reduction(const CurveSpec& C) {
    C.validate();
    const int p = static_cast<int>(C.p);
    if (p != 2) {
        const ff::Poly f = detail::reduce(detail::completed_square(C), C.p);
        if (ff::degree(f) != 2 * C.genus + 1) return false;
        return ff::degree(ff::gcd(f, ff::derivative(f, p), p)) == 0;
    }
    const ff::Poly g = detail::reduce(C.g, 2), h = detail::reduce(C.h, 2);
    if (g.empty() || ff::degree(h) != 2 * C.genus + 1) return false;
    // Singular points satisfy g(x) = 0 and g'(x)^2 h(x) = h'(x)^2.
    const ff::Poly dg = ff::derivative(g, 2), dh = ff::derivative(h, 2);
    const ff::Poly cond = ff::add(ff::mul(ff::mul(dg, dg, 2), h, 2), ff::mul(dh, dh, 2), 2);
    return ff::degree(ff::gcd(g, cond, 2)) == 0;
}

/// A point of the reduced curve over a fixed F_{p^e}; coordinates use that
/// field's encoding.
struct CurvePoint {
    bool at_infinity = false;
    std::uint32_t x = 0;
    std::uint32_t y = 0;

    static CurvePoint infinity() { return {true, 0, 0}; }

    std::string str() const {
        return at_infinity ? std::string("inf") : std::to_string(x) + "," + std::to_string(y);
    }

    /// Infinity first, then by (x, y).
    std::strong_ordering operator<=>(const CurvePoint& o) const {
        if (at_infinity != o.at_infinity) return at_infinity ? std::strong_ordering::less : std::strong_ordering::greater;
        if (at_infinity) return std::strong_ordering::equal;
        return std::tie(x, y) <=> std::tie(o.x, o.y);
    }
    bool operator==(const CurvePoint&) const = default;
};

/// A Frobenius orbit of e points over F_{p^e}, represented by its least member.
struct ClosedPoint {
    int degree = 1;
    CurvePoint representative;

    std::string key() const { return std::to_string(degree) + ":" + representative.str(); }

    auto operator<=>(const ClosedPoint&) const = default;
};

/// Reduced model over F_{p^e} with point enumeration.
class ReducedCurve {
public:
    ReducedCurve(const CurveSpec& C, int e) : C_(C), F_(C.p, e) {
        if (!good_reduction(C)) throw InputError("the model has bad reduction at p = " + std::to_string(C.p));
        g_ = detail::reduce(C.g, C.p);
        h_ = detail::reduce(C.h, C.p);
        if (C.p == 2) {
            as_roots_.assign(F_.size(), {});
            for (std::uint32_t z = 0; z < F_.size(); ++z) as_roots_[F_.add(F_.mul(z, z), z)].push_back(z);
        }
    }

    const ff::Field& field() const { return F_; }

    bool on_curve(const CurvePoint& P) const {
        if (P.at_infinity) return true;
        if (P.x >= F_.size() || P.y >= F_.size()) return false;
        const auto lhs = F_.add(F_.mul(P.y, P.y), F_.mul(F_.eval(g_, P.x), P.y));
        return lhs == F_.eval(h_, P.x);
    }

    /// y with y^2 + g(x) y = h(x), in increasing encoding.
    std::vector<std::uint32_t> fibre(std::uint32_t x) const {
        const auto a = F_.eval(g_, x), b = F_.eval(h_, x);
        std::vector<std::uint32_t> ys;
        if (C_.p != 2) {
            // (2y + a)^2 = a^2 + 4b
            const auto four = F_.from_int(4), half = F_.inv(F_.from_int(2));
            for (auto s : F_.sqrt(F_.add(F_.mul(a, a), F_.mul(four, b)))) ys.push_back(F_.mul(F_.sub(s, a), half));
        } else if (a == 0) {
            ys = F_.sqrt(b);
        } else {
            // y = a z with z^2 + z = b / a^2
            const auto c = F_.mul(b, F_.inv(F_.mul(a, a)));
            for (auto z : as_roots_[c]) ys.push_back(F_.mul(a, z));
        }
        std::sort(ys.begin(), ys.end());
        ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
        return ys;
    }

    /// #X(F_{p^e}) by the character sum (odd p) or the trace criterion (p = 2).
    long long count() const {
        long long n = 1;
        for (std::uint32_t x = 0; x < F_.size(); ++x) {
            const auto a = F_.eval(g_, x), b = F_.eval(h_, x);
            if (C_.p != 2) {
                n += 1 + F_.quadratic_character(F_.add(F_.mul(a, a), F_.mul(F_.from_int(4), b)));
            } else if (a == 0) {
                n += 1;
            } else {
                n += F_.trace(F_.mul(b, F_.inv(F_.mul(a, a)))) == 0 ? 2 : 0;
            }
        }
        return n;
    }

    std::vector<CurvePoint> points() const {
        std::vector<CurvePoint> out{CurvePoint::infinity()};
        for (std::uint32_t x = 0; x < F_.size(); ++x)
            for (auto y : fibre(x)) out.push_back({false, x, y});
        return out;
    }

    CurvePoint frobenius(const CurvePoint& P) const {
        if (P.at_infinity) return P;
        return {false, F_.frobenius(P.x), F_.frobenius(P.y)};
    }

private:
    CurveSpec C_;
    ff::Field F_;
    ff::Poly g_, h_;
    std::vector<std::vector<std::uint32_t>> as_roots_;
};

inline void check_degree(int e) {
    if (e < 1) throw InputError("field degree must be positive");
    if (e > max_count_degree)
        throw InputError("field degree " + std::to_string(e) + " exceeds the brute-force limit " +
                         std::to_string(max_count_degree));
}

/// #X(F_{p^e}), counting the point at infinity of the odd model.
inline long long count_points(const CurveSpec& C, int e) {
    check_degree(e);
    return ReducedCurve(C, e).count();
}

inline long long mobius(int n) {
    int result = 1;
    for (int r = 2; r * r <= n; ++r) {
        if (n % r) continue;
        n /= r;
        if (n % r == 0) return 0;
        result = -result;
    }
    if (n > 1) result = -result;
    return result;
}

struct ClosedPointSet {
    int max_degree = 0;
    std::vector<ClosedPoint> points; // sorted by degree, then representative
    std::vector<long long> counts;   // counts[e-1] = a_e
    std::vector<long long> totals;   // totals[e-1] = #X(F_{p^e})

    long long count(int e) const { return counts.at(static_cast<std::size_t>(e - 1)); }
};

/// Frobenius orbits of the points over F_{p^e}, e <= d.
inline ClosedPointSet closed_points(const CurveSpec& C, int d) {
    check_degree(d);
    ClosedPointSet out;
    out.max_degree = d;
    for (int e = 1; e <= d; ++e) {
        const ReducedCurve X(C, e);
        const auto pts = X.points();
        out.totals.push_back(static_cast<long long>(pts.size()));
        long long a = 0;
        for (const auto& P : pts) {
            std::vector<CurvePoint> orbit{P};
            for (CurvePoint Q = X.frobenius(P); Q != P; Q = X.frobenius(Q)) orbit.push_back(Q);
            if (static_cast<int>(orbit.size()) != e) continue;
            if (*std::min_element(orbit.begin(), orbit.end()) != P) continue;
            out.points.push_back({e, P});
            ++a;
        }
        out.counts.push_back(a);
    }
    std::sort(out.points.begin(), out.points.end());
    return out;
}

/// a_e from point counts via Moebius inversion; totals[m-1] = #X(F_{p^m}).
inline long long closed_point_count(const std::vector<long long>& totals, int e) {
    long long s = 0;
    for (int m = 1; m <= e; ++m)
        if (e % m == 0) s += mobius(e / m) * totals.at(static_cast<std::size_t>(m - 1));
    if (s % e != 0) throw ComputationError("point counts violate the orbit relation");
    return s / e;
}

/// Order of vanishing at P of the reduction of x^a dx / (2y + g), p odd.
inline long long vanishing_order(const CurveSpec& C, int e, const CurvePoint& P, int a) {
    if (C.p == 2) throw InputError("vanishing orders in characteristic 2 must be supplied by the user");
    if (a < 0 || a > C.genus - 1) throw InputError("differential exponent must lie in 0..genus-1");
    check_degree(e);
    const ReducedCurve X(C, e);
    if (!X.on_curve(P)) throw InputError("point " + P.str() + " is not on the reduced curve");
    if (P.at_infinity) return 2LL * C.genus - 2 - 2LL * a;
    const auto& F = X.field();
    const auto Y = F.add(F.mul(F.from_int(2), P.y), F.eval(detail::reduce(C.g, C.p), P.x));
    // Away from Y = 0, x - x0 is a uniformizer and dx/Y a unit; at Y = 0,
    // Y is a uniformizer, x - x0 has order 2 and dx/Y is a unit.
    if (P.x != 0) return 0;
    return Y != 0 ? a : 2LL * a;
}

} // namespace symchab::chabauty

#endif // SYMCHAB_CURVE_HPP
