#ifndef SYMCHAB_TROPICAL_HPP
#define SYMCHAB_TROPICAL_HPP

#include <algorithm>
#include <cstddef>
#include <set>
#include <vector>

#include "lp.hpp"
#include "polytope.hpp"
#include "series.hpp"

namespace symchab::core {

struct VertResult {
    Val min;                       // m_f(w)
    std::vector<ValuedTerm> terms; // vert_w(f), in exponent order
};

namespace detail {

inline void check_box(const ValuedSeries& f, const BoxDomain& P) {
    if (P.dim() != f.dim()) throw InputError("domain dimension does not match the series");
    P.validate();
}

// Omitted terms of a pure series stay out of vert sets at weights with
// w_i >= slope_i, provided enough of each variable's part is stored.
inline void check_tail(const ValuedSeries& f, const std::vector<Rational>& slopes) {
    if (f.is_polynomial()) return;
    for (std::size_t i = 0; i < f.dim(); ++i) {
        if (slopes[i] <= 0)
            throw InputError("a pure tail only controls weights with every coordinate positive");
        const long long k = f.tail().vars[i].k;
        const long long need = k + truncation_depth(k, f.prime(), slopes[i]);
        if (f.stored_degree(i) < need)
            throw InputError("stored support of variable " + std::to_string(i + 1) + " ends at degree " +
                             std::to_string(f.stored_degree(i)) + ", below the certified cutoff " +
                             std::to_string(need));
    }
}

inline void check_weight(const ValuedSeries& f, const Point& w) {
    if (w.size() != f.dim()) throw InputError("weight has wrong dimension");
    for (const auto& x : w)
        if (x < 0) throw InputError("weight outside the domain: negative coordinate");
}

inline std::vector<std::size_t> vert_indices(const ValuedSeries& f, const Point& w) {
    std::vector<std::size_t> idx;
    Val best;
    for (std::size_t i = 0; i < f.terms().size(); ++i) {
        const Val v = f.terms()[i].weight(w);
        if (v < best) {
            best = v;
            idx.clear();
        }
        if (v == best) idx.push_back(i);
    }
    return idx;
}

} // namespace detail

/// m_f(w) and vert_w(f). The weight must lie in [0, inf)^d; pure series also
/// need w_i > 0 with enough stored terms for their tail certificate.
inline VertResult vert_w(const ValuedSeries& f, const Point& w) {
    detail::check_weight(f, w);
    detail::check_tail(f, w);
    VertResult r;
    for (auto i : detail::vert_indices(f, w)) r.terms.push_back(f.terms()[i]);
    r.min = r.terms.front().weight(w);
    return r;
}

inline VertResult vert_w(const ValuedSeries& f, const Point& w, const BoxDomain& P) {
    detail::check_box(f, P);
    if (!P.contains(w)) throw InputError("weight outside the domain");
    return vert_w(f, w);
}

/// Union of vert_w(f) over w in P.
///
/// A term x^u is in the union iff the polyhedron { w in P : v(a_u) + <u,w> <=
/// v(a_u') + <u',w> for all u' } is nonempty. Each test is decided exactly
/// through its Farkas alternative, which has only d + 1 rows.
inline std::vector<ValuedTerm> vert_domain(const ValuedSeries& f, const BoxDomain& P) {
    detail::check_box(f, P);
    detail::check_tail(f, P.m);
    const auto& T = f.terms();
    const std::size_t n = T.size(), d = f.dim();
    std::vector<Rational> shifted(n);
    for (std::size_t i = 0; i < n; ++i) shifted[i] = T[i].coeff_val.value() + T[i].exponent.pair(P.m);

    std::vector<ValuedTerm> out;
    for (std::size_t j = 0; j < n; ++j) {
        // With w = m + x, x >= 0: <u_j - u_i, x> <= b_i for all i != j.
        std::vector<std::size_t> others;
        bool corner = true;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == j) continue;
            others.push_back(i);
            if (shifted[i] < shifted[j]) corner = false;
        }
        // Cheap exclusion: some term is strictly lower at the corner and grows no faster.
        bool dominated = false;
        for (std::size_t i = 0; i < n && !corner && !dominated; ++i) {
            if (i == j || !(shifted[i] < shifted[j])) continue;
            bool slower = true;
            for (std::size_t c = 0; c < d; ++c)
                if (T[i].exponent[c] > T[j].exponent[c]) slower = false;
            dominated = slower;
        }
        if (dominated) continue;
        bool member = corner;
        if (!corner) {
            // Infeasible iff some y >= 0, sum y = 1, has sum y_i (u_j - u_i) >= 0 and sum y_i b_i < 0.
            const std::size_t nv = others.size() + d;
            lp::Problem lp(nv);
            lp::Row obj(nv, Rational(0));
            for (std::size_t a = 0; a < others.size(); ++a) obj[a] = shifted[j] - shifted[others[a]];
            lp.set_objective(obj);
            for (std::size_t c = 0; c < d; ++c) {
                lp::Row row(nv, Rational(0));
                for (std::size_t a = 0; a < others.size(); ++a)
                    row[a] = T[j].exponent[c] - T[others[a]].exponent[c];
                row[others.size() + c] = -1;
                lp.add_eq(std::move(row), 0);
            }
            lp::Row ones(nv, Rational(0));
            for (std::size_t a = 0; a < others.size(); ++a) ones[a] = 1;
            lp.add_eq(std::move(ones), 1);
            const auto res = lp.solve();
            member = res.status == lp::Status::infeasible || res.value <= 0;
        }
        if (member) out.push_back(T[j]);
    }
    return out;
}

/// Open tie condition: at least two terms attain m_f(w).
inline bool trop_membership(const ValuedSeries& f, const Point& w, const BoxDomain& P) {
    return vert_w(f, w, P).terms.size() >= 2;
}

inline bool trop_membership(const ValuedSeries& f, const Point& w) { return vert_w(f, w).terms.size() >= 2; }

/// a . w = b (equality) or a . w <= b (inequality).
struct LinearConstraint {
    Point a;
    Rational b;

    bool holds_eq(const Point& w) const { return dot(a, w) == b; }
    bool holds_le(const Point& w) const { return dot(a, w) <= b; }

    friend bool operator==(const LinearConstraint&, const LinearConstraint&) = default;
};

/// A closed maximal cell of Trop(f) within a box domain.
struct TropCell {
    std::vector<ExponentVec> tie;              // exponents of the terms tying on the cell
    std::vector<LinearConstraint> equalities;
    std::vector<LinearConstraint> inequalities; // includes the box bounds
    Point relative_interior;
    int dimension = 0;

    bool contains(const Point& w) const {
        return std::all_of(equalities.begin(), equalities.end(), [&](const auto& c) { return c.holds_eq(w); }) &&
               std::all_of(inequalities.begin(), inequalities.end(), [&](const auto& c) { return c.holds_le(w); });
    }

    friend bool operator==(const TropCell&, const TropCell&) = default;
};

namespace detail {

inline std::size_t rank(std::vector<Point> rows) {
    std::size_t r = 0;
    const std::size_t cols = rows.empty() ? 0 : rows[0].size();
    for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
        std::size_t piv = r;
        while (piv < rows.size() && rows[piv][c] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[piv], rows[r]);
        for (std::size_t i = r + 1; i < rows.size(); ++i) {
            if (rows[i][c] == 0) continue;
            const Rational f = rows[i][c] / rows[r][c];
            for (std::size_t k = c; k < cols; ++k) rows[i][k] -= f * rows[r][k];
        }
        ++r;
    }
    return r;
}

struct CellProbe {
    bool nonempty = false;
    Point point;     // relative interior point
    int dimension = 0;
};

// Cell of ties between terms i and j where both attain the minimum, in P.
inline CellProbe probe_pair(const ValuedSeries& f, const std::vector<std::size_t>& live, std::size_t i,
                            std::size_t j, const BoxDomain& P) {
    const auto& T = f.terms();
    const std::size_t d = f.dim();
    auto weight_row = [&](std::size_t a, std::size_t b) {
        // <u_a - u_b, w> as a row over w
        Point r(d);
        for (std::size_t c = 0; c < d; ++c) r[c] = T[a].exponent[c] - T[b].exponent[c];
        return r;
    };
    // constraints "row . w <= rhs" with w the original weight
    std::vector<LinearConstraint> ineq;
    for (auto k : live) {
        if (k == i || k == j) continue;
        ineq.push_back({weight_row(i, k), T[k].coeff_val.value() - T[i].coeff_val.value()});
    }
    for (std::size_t c = 0; c < d; ++c) {
        Point r(d, Rational(0));
        r[c] = -1;
        ineq.push_back({r, -P.m[c]});
    }
    const LinearConstraint tie{weight_row(i, j), T[j].coeff_val.value() - T[i].coeff_val.value()};

    // w = m + x with x >= 0 absorbs the box bounds into sign constraints.
    auto to_x = [&](const LinearConstraint& c) { return c.b - dot(c.a, P.m); };
    auto base_problem = [&] {
        lp::Problem lp(d);
        lp.add_eq(tie.a, to_x(tie));
        for (std::size_t q = 0; q + d < ineq.size(); ++q) lp.add_le(ineq[q].a, to_x(ineq[q]));
        return lp;
    };

    CellProbe probe;
    {
        auto lp = base_problem();
        const auto res = lp.solve();
        if (res.status == lp::Status::infeasible) return probe;
        probe.nonempty = true;
        probe.point = res.x;
    }
    std::vector<Point> strict_points;
    std::vector<Point> implicit{tie.a};
    const Point start = probe.point;
    for (std::size_t q = 0; q < ineq.size(); ++q) {
        auto lp = base_problem();
        // maximize the slack of constraint q, capped one above its slack at a known point
        const Rational rhs = to_x(ineq[q]);
        Point neg = ineq[q].a;
        for (auto& x : neg) x = -x;
        lp.set_objective(neg);
        lp.add_le(neg, dot(neg, start) + 1);
        const auto res = lp.solve();
        if (res.status == lp::Status::optimal && res.value + rhs > 0)
            strict_points.push_back(res.x);
        else
            implicit.push_back(ineq[q].a);
    }
    if (!strict_points.empty()) {
        Point avg(d, Rational(0));
        for (const auto& x : strict_points)
            for (std::size_t c = 0; c < d; ++c) avg[c] += x[c];
        for (auto& v : avg) v /= static_cast<long long>(strict_points.size());
        probe.point = avg;
    }
    for (std::size_t c = 0; c < d; ++c) probe.point[c] += P.m[c];
    probe.dimension = static_cast<int>(d - rank(implicit));
    return probe;
}

} // namespace detail

/// Maximal closed cells of Trop(f) within P, for d <= 3.
///
/// Every cell is the closure of a region where a fixed set of at least two
/// terms ties for the minimum; the maximal ones are those with inclusion-
/// minimal tie sets. Ordered by tie set.
inline std::vector<TropCell> trop_cells(const ValuedSeries& f, const BoxDomain& P) {
    if (f.dim() > 3) throw InputError("trop_cells supports dimension at most 3");
    detail::check_box(f, P);
    detail::check_tail(f, P.m);
    const auto live_terms = vert_domain(f, P);
    std::vector<std::size_t> live;
    for (std::size_t i = 0; i < f.terms().size(); ++i)
        if (std::find(live_terms.begin(), live_terms.end(), f.terms()[i]) != live_terms.end()) live.push_back(i);

    struct Found {
        std::vector<std::size_t> tie;
        detail::CellProbe probe;
    };
    std::vector<Found> found;
    for (std::size_t a = 0; a < live.size(); ++a)
        for (std::size_t b = a + 1; b < live.size(); ++b) {
            auto probe = detail::probe_pair(f, live, live[a], live[b], P);
            if (!probe.nonempty) continue;
            auto tie = detail::vert_indices(f, probe.point);
            if (std::none_of(found.begin(), found.end(), [&](const Found& x) { return x.tie == tie; }))
                found.push_back({std::move(tie), std::move(probe)});
        }

    std::sort(found.begin(), found.end(), [](const Found& x, const Found& y) { return x.tie < y.tie; });
    std::vector<TropCell> cells;
    const auto& T = f.terms();
    for (const auto& c : found) {
        const bool maximal = std::none_of(found.begin(), found.end(), [&](const Found& o) {
            return o.tie.size() < c.tie.size() &&
                   std::includes(c.tie.begin(), c.tie.end(), o.tie.begin(), o.tie.end());
        });
        if (!maximal) continue;
        TropCell cell;
        const std::size_t i0 = c.tie.front();
        auto diff = [&](std::size_t a, std::size_t b) {
            Point r(f.dim());
            for (std::size_t k = 0; k < f.dim(); ++k) r[k] = T[a].exponent[k] - T[b].exponent[k];
            return r;
        };
        for (auto t : c.tie) cell.tie.push_back(T[t].exponent);
        for (std::size_t q = 1; q < c.tie.size(); ++q)
            cell.equalities.push_back({diff(i0, c.tie[q]), T[c.tie[q]].coeff_val.value() - T[i0].coeff_val.value()});
        for (auto k : live)
            if (!std::binary_search(c.tie.begin(), c.tie.end(), k))
                cell.inequalities.push_back({diff(i0, k), T[k].coeff_val.value() - T[i0].coeff_val.value()});
        for (std::size_t k = 0; k < f.dim(); ++k) {
            Point r(f.dim(), Rational(0));
            r[k] = -1;
            cell.inequalities.push_back({r, -P.m[k]});
        }
        cell.relative_interior = c.probe.point;
        cell.dimension = c.probe.dimension;
        cells.push_back(std::move(cell));
    }
    return cells;
}

/// Local Newton polytope: conv of the exponents in vert_w(f).
inline polytope::Polytope gamma_w(const ValuedSeries& f, const Point& w) {
    std::vector<Point> pts;
    for (const auto& t : vert_w(f, w).terms) pts.push_back(t.exponent.as_point());
    return polytope::convex_hull(std::move(pts), f.dim());
}

/// Restriction of f to the exponents in S; S must contain every exponent of
/// vert_domain(f, P), which makes the tropicalization and every gamma_w on P
/// unchanged.
inline ValuedSeries auxiliary_polynomial(const ValuedSeries& f, const std::vector<ExponentVec>& S,
                                         const BoxDomain& P) {
    const std::set<ExponentVec> keep(S.begin(), S.end());
    for (const auto& t : vert_domain(f, P))
        if (!keep.count(t.exponent))
            throw ContractViolation("exponent set misses vert exponent " + t.exponent.str());
    std::vector<ValuedTerm> terms;
    for (const auto& t : f.terms())
        if (keep.count(t.exponent)) terms.push_back(t);
    return ValuedSeries(f.prime(), f.dim(), std::move(terms), TailCertificate::polynomial(), f.is_pure());
}

} // namespace symchab::core

#endif // SYMCHAB_TROPICAL_HPP
