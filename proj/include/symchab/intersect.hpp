#ifndef SYMCHAB_INTERSECT_HPP
#define SYMCHAB_INTERSECT_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "polytope.hpp"
#include "pure.hpp"
#include "tropical.hpp"

namespace symchab::intersect {

using core::BoxDomain;
using core::ExponentVec;
using core::Val;
using core::ValuedSeries;
using core::ValuedTerm;
using polytope::Polytope;

/// d series in d variables over a common prime and box domain.
class SeriesSystem {
public:
    SeriesSystem(std::vector<ValuedSeries> members, BoxDomain domain)
        : members_(std::move(members)), domain_(std::move(domain)) {
        if (members_.empty()) throw InputError("a system needs at least one member");
        const auto& f = members_.front();
        if (members_.size() != f.dim())
            throw InputError("a system needs as many members as variables");
        for (const auto& g : members_) {
            if (g.prime() != f.prime()) throw InputError("system members have different primes");
            if (g.dim() != f.dim()) throw InputError("system members have different dimensions");
        }
        if (domain_.dim() != f.dim()) throw InputError("system domain has the wrong dimension");
        domain_.validate();
    }

    SeriesSystem(std::vector<ValuedSeries> members)
        : SeriesSystem(members, BoxDomain::orthant(members.empty() ? 0 : members.front().dim())) {}

    long long prime() const { return members_.front().prime(); }
    std::size_t dim() const { return members_.front().dim(); }
    const std::vector<ValuedSeries>& members() const { return members_; }
    const BoxDomain& domain() const { return domain_; }

    friend bool operator==(const SeriesSystem&, const SeriesSystem&) = default;

private:
    std::vector<ValuedSeries> members_;
    BoxDomain domain_;
};

/// Every variable occurs as a pure power x_i^n, n > 0, in the support.
inline bool is_nondegenerate(const ValuedSeries& f) {
    for (std::size_t i = 0; i < f.dim(); ++i) {
        const bool found = std::any_of(f.terms().begin(), f.terms().end(), [&](const ValuedTerm& t) {
            return t.exponent.support_size() == 1 && t.exponent[i] > 0;
        });
        if (!found) return false;
    }
    return true;
}

inline Polytope newton_polytope(const ValuedSeries& f) {
    std::vector<Point> pts;
    for (const auto& t : f.terms()) pts.push_back(t.exponent.as_point());
    return polytope::convex_hull(std::move(pts), f.dim());
}

namespace detail {

inline long long as_count(const Rational& r, const char* what) {
    if (!is_integer(r)) throw ComputationError(std::string(what) + " is not an integer: " + to_string(r));
    return to_int64(r);
}

} // namespace detail

/// Mixed volume of the Newton polytopes: bounds the common zeros in the torus.
inline long long bernstein_bound(const SeriesSystem& sys) {
    std::vector<Polytope> Q;
    for (const auto& f : sys.members()) {
        if (!f.is_polynomial()) throw InputError("bernstein_bound needs polynomial members");
        Q.push_back(newton_polytope(f));
    }
    return detail::as_count(polytope::mixed_volume(Q), "mixed volume");
}

namespace detail {

// A nonzero v with every argmin over a chosen edge of each gamma non-singleton.
inline bool has_nonzero_common_direction(const std::vector<std::vector<Point>>& verts) {
    const std::size_t d = verts.size();
    std::vector<std::pair<std::size_t, std::size_t>> choice(d);
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> edges(d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t a = 0; a < verts[i].size(); ++a)
            for (std::size_t b = a + 1; b < verts[i].size(); ++b) edges[i].push_back({a, b});
    std::vector<std::size_t> pick(d, 0);
    for (;;) {
        // cone: <x_a - x_b, v> = 0 and <x_a - x_c, v> <= 0 for every vertex c, per member
        lp::Matrix A;
        lp::Row b;
        for (std::size_t i = 0; i < d; ++i) {
            const auto [ia, ib] = edges[i][pick[i]];
            const Point& xa = verts[i][ia];
            for (std::size_t c = 0; c < verts[i].size(); ++c) {
                Point r(d);
                for (std::size_t k = 0; k < d; ++k) r[k] = xa[k] - verts[i][c][k];
                if (c == ib) {
                    Point neg = r;
                    for (auto& x : neg) x = -x;
                    A.push_back(neg);
                    b.push_back(0);
                }
                A.push_back(std::move(r));
                b.push_back(0);
            }
        }
        for (std::size_t k = 0; k < d; ++k)
            for (int s : {1, -1}) {
                auto A2 = A;
                auto b2 = b;
                Point r(d, Rational(0));
                r[k] = -s;
                A2.push_back(r);
                b2.push_back(-1);
                if (lp::free_feasible(A2, b2, d)) return true;
            }
        std::size_t i = 0;
        while (i < d && pick[i] + 1 == edges[i].size()) pick[i++] = 0;
        if (i == d) return false;
        ++pick[i];
    }
}

} // namespace detail

/// MV(gamma_w(f_1), ..., gamma_w(f_d)): common zeros with coordinate-wise
/// valuation w, counted with multiplicity. Isolation of w in the
/// intersection of the tropicalizations is verified for d <= 3.
inline long long local_multiplicity(const SeriesSystem& sys, const Point& w) {
    const auto& P = sys.domain();
    if (w.size() != sys.dim()) throw InputError("weight has wrong dimension");
    for (std::size_t i = 0; i < w.size(); ++i)
        if (!(w[i] > P.m[i])) throw InputError("local_multiplicity needs a weight in the interior of the domain");
    std::vector<Polytope> gammas;
    std::vector<std::vector<Point>> verts;
    for (std::size_t r = 0; r < sys.dim(); ++r) {
        const auto& f = sys.members()[r];
        if (!core::trop_membership(f, w, P))
            throw InputError("weight is not in the tropicalization of member " + std::to_string(r + 1));
        gammas.push_back(core::gamma_w(f, w));
        verts.push_back(gammas.back().vertices());
    }
    if (sys.dim() <= 3 && detail::has_nonzero_common_direction(verts))
        throw InputError("weight is not an isolated point of the tropical intersection");
    return detail::as_count(polytope::mixed_volume(gammas), "mixed volume");
}

enum class CountMethod {
    mixed_volume,   // exact MV of the Newton polytopes
    axis_permanent, // Per(A)/i! with A the matrix of pure-power degrees
};

struct StableCount {
    Rational interior;
    std::map<std::vector<std::size_t>, Rational> strata; // nonzero coordinates -> bound; {} is the origin
    Rational total;

    friend bool operator==(const StableCount&, const StableCount&) = default;
};

namespace detail {

// Members restricted to the coordinate subspace T (other variables set to 0).
inline std::optional<ValuedSeries> restrict_to(const ValuedSeries& f, const std::vector<std::size_t>& T) {
    std::vector<ValuedTerm> out;
    for (const auto& t : f.terms()) {
        bool inside = true;
        for (std::size_t i = 0; i < f.dim(); ++i)
            if (t.exponent[i] != 0 && !std::binary_search(T.begin(), T.end(), i)) inside = false;
        if (!inside) continue;
        std::vector<int> e;
        for (auto i : T) e.push_back(t.exponent[i]);
        out.push_back({ExponentVec(std::move(e)), t.coeff_val, t.coeff_exact});
    }
    if (out.empty()) return std::nullopt;
    return ValuedSeries(f.prime(), T.size(), std::move(out), core::TailCertificate::polynomial(), f.is_pure());
}

inline Rational count_system(const std::vector<ValuedSeries>& members, CountMethod method) {
    const std::size_t d = members.size();
    if (method == CountMethod::mixed_volume) {
        std::vector<Polytope> Q;
        for (const auto& f : members) Q.push_back(newton_polytope(f));
        return polytope::mixed_volume(Q);
    }
    polytope::SquareMatrix A(d);
    for (std::size_t r = 0; r < d; ++r) {
        if (!is_nondegenerate(members[r]))
            throw InputError("the permanent count needs every member to contain each variable as a pure power");
        for (std::size_t c = 0; c < d; ++c) A(r, c) = members[r].stored_degree(c);
    }
    return polytope::permanent(A) / polytope::detail::factorial(d);
}

} // namespace detail

/// Bound on the common zeros in every coordinate stratum of the domain.
///
/// The stratum where exactly the coordinates in T are nonzero uses the first
/// |T| members restricted to those coordinates. The origin counts 1 unless
/// some member has an exact nonzero constant term; a valuation-only constant
/// stands for an unknown value and may vanish. Pure members with a tail
/// certificate are first truncated with l = d.
inline StableCount stable_count_bound(const SeriesSystem& sys, CountMethod method = CountMethod::mixed_volume) {
    const std::size_t d = sys.dim();
    std::vector<ValuedSeries> members;
    for (const auto& f : sys.members())
        members.push_back(f.is_polynomial() ? f : core::truncate_pure(f, sys.domain(), static_cast<long long>(d)));

    StableCount out;
    out.interior = detail::count_system(members, method);
    out.total = out.interior;
    for (std::size_t mask = 0; mask + 1 < (std::size_t{1} << d); ++mask) {
        std::vector<std::size_t> T;
        for (std::size_t i = 0; i < d; ++i)
            if (mask >> i & 1) T.push_back(i);
        Rational count;
        if (T.empty()) {
            const bool origin_possible = std::all_of(members.begin(), members.end(), [&](const ValuedSeries& f) {
                const auto* c = f.find(ExponentVec(std::vector<int>(d, 0)));
                return c == nullptr || !c->coeff_exact.has_value();
            });
            count = origin_possible ? 1 : 0;
        } else {
            std::vector<ValuedSeries> restricted;
            for (std::size_t r = 0; r < T.size(); ++r) {
                auto g = detail::restrict_to(members[r], T);
                if (!g)
                    throw ComputationError("member " + std::to_string(r + 1) +
                                           " vanishes identically on a coordinate stratum");
                restricted.push_back(std::move(*g));
            }
            count = detail::count_system(restricted, method);
        }
        out.strata[T] = count;
        out.total += count;
    }
    return out;
}

/// A polynomial h with support in M(f) that vanishes at none of the points,
/// built greedily: each new monomial gets a coefficient p^e with e minimal so
/// that it cannot cancel the values already secured.
inline ValuedSeries nonvanishing_poly(const ValuedSeries& f, const std::vector<Point>& points) {
    if (!is_nondegenerate(f)) throw InputError("nonvanishing_poly needs a nondegenerate series");
    const long long p = f.prime();
    const std::size_t d = f.dim();
    for (const auto& q : points) {
        if (q.size() != d) throw InputError("point has wrong dimension");
        if (std::all_of(q.begin(), q.end(), [](const Rational& x) { return x == 0; }))
            throw InputError("nonvanishing_poly: the origin is not allowed");
    }
    std::vector<ExponentVec> monomials;
    for (const auto& t : f.terms()) monomials.push_back(t.exponent);
    std::sort(monomials.rbegin(), monomials.rend());

    auto mono_at = [](const ExponentVec& u, const Point& q) {
        Rational v = 1;
        for (std::size_t i = 0; i < q.size(); ++i)
            for (int e = 0; e < u[i]; ++e) v *= q[i];
        return v;
    };
    std::map<ExponentVec, Rational> h;
    auto h_at = [&](const Point& q) {
        Rational s = 0;
        for (const auto& [u, c] : h) s += c * mono_at(u, q);
        return s;
    };
    for (std::size_t l = 0; l < points.size(); ++l) {
        if (h_at(points[l]) != 0) continue;
        const auto m = std::find_if(monomials.begin(), monomials.end(),
                                    [&](const ExponentVec& u) { return mono_at(u, points[l]) != 0; });
        Rational c = 1;
        for (;;) {
            bool ok = true;
            for (std::size_t i = 0; i < l && ok; ++i)
                ok = core::val_p(c * mono_at(*m, points[i]), p) > core::val_p(h_at(points[i]), p);
            if (ok) break;
            c *= p;
        }
        h[*m] += c;
    }
    if (h.empty()) h[monomials.front()] = 1;
    std::vector<std::pair<ExponentVec, Rational>> coeffs(h.begin(), h.end());
    return ValuedSeries::exact(p, d, coeffs);
}

struct Perturbation {
    std::optional<ValuedSeries> h; // absent when the member is unchanged
    Val eps_val;                   // valuation of eps = p^e; +inf when unchanged

    friend bool operator==(const Perturbation&, const Perturbation&) = default;
};

struct DeformationReport {
    SeriesSystem deformed;
    std::vector<Perturbation> perturbations;
    std::vector<std::vector<Point>> witnesses;
    std::vector<Point> samples;
    bool trop_preserved = false;
    bool gamma_preserved = false;

    friend bool operator==(const DeformationReport&, const DeformationReport&) = default;
};

inline constexpr int max_eps_increments = 64;

namespace detail {

inline ValuedSeries add_scaled(const ValuedSeries& f, const ValuedSeries& h, const Rational& eps) {
    std::map<ExponentVec, Rational> sum;
    for (const auto& t : f.terms()) sum[t.exponent] += *t.coeff_exact;
    for (const auto& t : h.terms()) sum[t.exponent] += eps * *t.coeff_exact;
    std::vector<std::pair<ExponentVec, Rational>> coeffs;
    for (const auto& [u, c] : sum)
        if (c != 0) coeffs.push_back({u, c});
    if (coeffs.empty()) throw ComputationError("deformation cancelled every term");
    return ValuedSeries::exact(f.prime(), f.dim(), coeffs, f.is_pure());
}

inline std::set<std::pair<ExponentVec, Val>> height_set(const std::vector<ValuedTerm>& terms) {
    std::set<std::pair<ExponentVec, Val>> s;
    for (const auto& t : terms) s.insert({t.exponent, t.coeff_val});
    return s;
}

} // namespace detail

/// Replaces member r by f_r + eps_r h_r, r = 1..d in order, where h_r does
/// not vanish on the witnesses of member r and v(eps_r) is raised one step at
/// a time until vert_domain and gamma_w at every sample weight are unchanged.
inline DeformationReport deform_system(const SeriesSystem& sys, const std::vector<std::vector<Point>>& witnesses,
                                       const std::vector<Point>& samples) {
    const std::size_t d = sys.dim();
    const auto& P = sys.domain();
    if (witnesses.size() != d) throw InputError("deform_system needs one witness list per member");
    for (const auto& w : samples)
        if (!P.contains(w)) throw InputError("sample weight outside the domain");
    for (const auto& f : sys.members()) {
        if (!f.is_polynomial() || !f.all_exact())
            throw InputError("deform_system needs exact polynomial members");
        if (!is_nondegenerate(f)) throw InputError("deform_system needs nondegenerate members");
    }
    for (const auto& list : witnesses)
        for (const auto& q : list)
            for (const auto& x : q)
                if (x == 0) throw InputError("witness coordinates must be nonzero");

    std::vector<ValuedSeries> members = sys.members();
    std::vector<Perturbation> perturbations(d);
    for (std::size_t r = 0; r < d; ++r) {
        if (witnesses[r].empty()) continue;
        const auto& f = members[r];
        const auto h = nonvanishing_poly(f, witnesses[r]);
        const auto before = detail::height_set(core::vert_domain(f, P));
        Rational eps = 1;
        bool done = false;
        for (int e = 1; e <= max_eps_increments && !done; ++e) {
            eps *= sys.prime();
            std::optional<ValuedSeries> g;
            try {
                g = detail::add_scaled(f, h, eps);
            } catch (const ComputationError&) {
                continue;
            }
            if (detail::height_set(core::vert_domain(*g, P)) != before) continue;
            const bool same_gamma = std::all_of(samples.begin(), samples.end(), [&](const Point& w) {
                return core::gamma_w(*g, w) == core::gamma_w(f, w);
            });
            if (!same_gamma) continue;
            members[r] = std::move(*g);
            perturbations[r] = Perturbation{h, Val(Rational(e))};
            done = true;
        }
        if (!done)
            throw ComputationError("no eps with valuation up to " + std::to_string(max_eps_increments) +
                                   " preserves the tropical data of member " + std::to_string(r + 1));
    }

    DeformationReport rep{SeriesSystem(members, P), std::move(perturbations), witnesses, samples, true, true};
    for (std::size_t r = 0; r < d; ++r) {
        const auto& f = sys.members()[r];
        const auto& g = rep.deformed.members()[r];
        if (detail::height_set(core::vert_domain(f, P)) != detail::height_set(core::vert_domain(g, P)))
            rep.trop_preserved = false;
        for (const auto& w : samples)
            if (core::gamma_w(f, w) != core::gamma_w(g, w)) rep.gamma_preserved = false;
    }
    return rep;
}

/// Zeros of a one-variable polynomial in the closed disk v(x) >= m, with
/// multiplicity: the largest exponent among the terms of vert_m(f).
inline long long newton_zero_count(const ValuedSeries& f, const Rational& m) {
    if (f.dim() != 1 || !f.is_polynomial()) throw InputError("newton_zero_count needs a one-variable polynomial");
    if (m < 0) throw InputError("newton_zero_count needs m >= 0");
    const auto r = core::vert_w(f, Point{m});
    return r.terms.back().exponent[0];
}

} // namespace symchab::intersect

#endif // SYMCHAB_INTERSECT_HPP
