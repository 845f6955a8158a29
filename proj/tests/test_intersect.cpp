#include <gtest/gtest.h>

#include <random>

#include <symchab/intersect.hpp>

#include "oracles/resultant.hpp"
#include "oracles/tropical_scan.hpp"

using namespace symchab;
using namespace symchab::core;
using namespace symchab::intersect;

namespace {

using Coeffs = std::vector<std::pair<ExponentVec, Rational>>;

ValuedSeries poly(long long p, std::size_t d, const Coeffs& c) { return ValuedSeries::exact(p, d, c); }

oracle::Bipoly to_bipoly(const ValuedSeries& f) {
    oracle::Bipoly b;
    for (const auto& t : f.terms()) b[{t.exponent[0], t.exponent[1]}] = *t.coeff_exact;
    return b;
}

std::optional<long long> torus_count(const SeriesSystem& s) {
    return oracle::torus_zero_count(to_bipoly(s.members()[0]), to_bipoly(s.members()[1]));
}

ValuedSeries swap_vars(const ValuedSeries& f) {
    Coeffs c;
    for (const auto& t : f.terms()) c.push_back({{t.exponent[1], t.exponent[0]}, *t.coeff_exact});
    return poly(f.prime(), 2, c);
}

ValuedSeries random_bivariate(std::mt19937& rng, int max_exp, int lo, int hi) {
    std::uniform_int_distribution<int> ex(0, max_exp), n(2, 5), c(lo, hi);
    std::map<ExponentVec, Rational> m;
    const int count = n(rng);
    while (static_cast<int>(m.size()) < count) {
        int v = 0;
        while (v == 0) v = c(rng);
        m[{ex(rng), ex(rng)}] = v;
    }
    return poly(2, 2, Coeffs(m.begin(), m.end()));
}

const ValuedSeries& line() {
    static const auto f = poly(2, 2, {{{0, 0}, 2}, {{1, 0}, 1}, {{0, 1}, 1}});
    return f;
}

} // namespace

TEST(System, Validation) {
    EXPECT_THROW(SeriesSystem({line()}), InputError);
    EXPECT_THROW(SeriesSystem({line(), poly(3, 2, {{{1, 0}, 1}})}), InputError);
    EXPECT_THROW(SeriesSystem({line(), line()}, BoxDomain::orthant(3)), InputError);
    EXPECT_NO_THROW(SeriesSystem({line(), line()}));
}

TEST(Nondegenerate, Examples) {
    EXPECT_TRUE(is_nondegenerate(poly(2, 2, {{{1, 0}, 1}, {{0, 1}, 1}})));
    EXPECT_FALSE(is_nondegenerate(poly(2, 2, {{{1, 1}, 1}})));
    const auto part = poly(2, 1, {{{1}, 1}, {{2}, Rational(1, 2)}});
    EXPECT_TRUE(is_nondegenerate(assemble_pure({part, part, part}, Val(0))));
}

TEST(Bernstein, Examples) {
    EXPECT_EQ(bernstein_bound(SeriesSystem({line(), poly(2, 2, {{{0, 0}, 3}, {{1, 0}, 1}, {{0, 1}, -1}})})), 1);
    const SeriesSystem sq({poly(2, 2, {{{0, 0}, 1}, {{1, 0}, 1}, {{0, 1}, 1}, {{1, 1}, 1}}),
                           poly(2, 2, {{{0, 0}, 3}, {{1, 0}, 1}, {{0, 1}, -1}})});
    EXPECT_EQ(bernstein_bound(sq), 2);
    EXPECT_EQ(torus_count(sq), 2);
    const SeriesSystem quad({poly(2, 2, {{{2, 0}, 1}, {{0, 1}, 1}, {{0, 0}, 1}}),
                             poly(2, 2, {{{0, 2}, 1}, {{1, 0}, 1}, {{0, 0}, 1}})});
    EXPECT_EQ(bernstein_bound(quad), 4);
    EXPECT_EQ(torus_count(quad), 4);
}

TEST(Bernstein, RejectsSeriesMembers) {
    const auto part = antiderivative(poly(2, 1, {{{0}, 1}, {{1}, 1}, {{2}, 1}, {{3}, 1}, {{4}, 1}}));
    const auto F = assemble_pure({part}, Val(0));
    EXPECT_THROW(bernstein_bound(SeriesSystem({F}, BoxDomain::uniform(1, 1))), InputError);
}

TEST(Bernstein, InvariantUnderPermutationAndUnitScaling) {
    std::mt19937 rng(31);
    for (int it = 0; it < 15; ++it) {
        const auto f = random_bivariate(rng, 3, -9, 9), g = random_bivariate(rng, 3, -9, 9);
        const auto b = bernstein_bound(SeriesSystem({f, g}));
        EXPECT_EQ(b, bernstein_bound(SeriesSystem({g, f})));
        Coeffs scaled;
        for (const auto& t : f.terms()) scaled.push_back({t.exponent, *t.coeff_exact * 3});
        EXPECT_EQ(b, bernstein_bound(SeriesSystem({poly(2, 2, scaled), g})));
    }
}

TEST(Bernstein, BoundsTorusZerosOnRandomSystems) {
    std::mt19937 rng(17);
    int checked = 0;
    for (int it = 0; it < 200 && checked < 30; ++it) {
        const SeriesSystem s({random_bivariate(rng, 3, -9, 9), random_bivariate(rng, 3, -9, 9)});
        const auto n = torus_count(s);
        if (!n) continue;
        ++checked;
        EXPECT_LE(*n, bernstein_bound(s));
    }
    EXPECT_GE(checked, 20);
}

TEST(LocalMultiplicity, Example) {
    const SeriesSystem s({line(), poly(2, 2, {{{0, 0}, 4}, {{1, 0}, 1}, {{0, 1}, 8}})});
    const Point w{2, 1};
    EXPECT_EQ(local_multiplicity(s, w), 1);
    EXPECT_EQ(gamma_w(s.members()[0], w).vertices(), (std::vector<Point>{make_point({0, 0}), make_point({0, 1})}));
    EXPECT_EQ(gamma_w(s.members()[1], w).vertices(), (std::vector<Point>{make_point({0, 0}), make_point({1, 0})}));
    const SeriesSystem swapped({s.members()[1], s.members()[0]});
    EXPECT_EQ(local_multiplicity(swapped, w), 1);
    // the unique root t1 = -12/7, t2 = -2/7 has valuations (2, 1)
    EXPECT_EQ(s.members()[0].evaluate({Rational(-12, 7), Rational(-2, 7)}), 0);
    EXPECT_EQ(s.members()[1].evaluate({Rational(-12, 7), Rational(-2, 7)}), 0);
}

TEST(LocalMultiplicity, Errors) {
    const SeriesSystem s({line(), poly(2, 2, {{{0, 0}, 4}, {{1, 0}, 1}, {{0, 1}, 8}})});
    EXPECT_THROW(local_multiplicity(s, Point{5, 5}), InputError);
    EXPECT_THROW(local_multiplicity(s, Point{0, 1}), InputError);
    EXPECT_THROW(local_multiplicity(SeriesSystem({line(), line()}), Point{2, 1}), InputError);
}

namespace {

// Isolated points of Trop(f) ∩ Trop(g) in the closed orthant, or nullopt if
// the intersection has a positive-dimensional piece.
std::optional<std::vector<Point>> tropical_intersection(const ValuedSeries& f, const ValuedSeries& g) {
    const auto P = BoxDomain::orthant(2);
    std::vector<Point> out;
    for (const auto& a : trop_cells(f, P))
        for (const auto& b : trop_cells(g, P)) {
            lp::Matrix A;
            lp::Row rhs;
            std::vector<Point> eqs;
            for (const auto* c : {&a, &b}) {
                for (const auto& e : c->equalities) {
                    A.push_back(e.a);
                    rhs.push_back(e.b);
                    Point neg = e.a;
                    for (auto& x : neg) x = -x;
                    A.push_back(neg);
                    rhs.push_back(-e.b);
                    eqs.push_back(e.a);
                }
                for (const auto& e : c->inequalities) {
                    A.push_back(e.a);
                    rhs.push_back(e.b);
                }
            }
            if (!lp::free_feasible(A, rhs, 2)) continue;
            if (core::detail::rank(eqs) < 2) return std::nullopt;
            // two independent equalities fix the point
            std::size_t i0 = 0, i1 = 1;
            while (core::detail::rank({eqs[i0], eqs[i1]}) < 2) ++i1;
            const Rational det = eqs[i0][0] * eqs[i1][1] - eqs[i0][1] * eqs[i1][0];
            Rational b0, b1;
            for (const auto* c : {&a, &b})
                for (const auto& e : c->equalities) {
                    if (e.a == eqs[i0]) b0 = e.b;
                    if (e.a == eqs[i1]) b1 = e.b;
                }
            Point w{(b0 * eqs[i1][1] - b1 * eqs[i0][1]) / det, (eqs[i0][0] * b1 - eqs[i1][0] * b0) / det};
            if (std::find(out.begin(), out.end(), w) == out.end()) out.push_back(w);
        }
    return out;
}

// True when every nonzero root of r has positive 2-adic valuation.
bool roots_positive(const oracle::Upoly& r) {
    const auto s = oracle::strip_zero_roots(r);
    const auto lead = val_p(s.back(), 2);
    for (std::size_t i = 0; i + 1 < s.size(); ++i)
        if (s[i] != 0 && !(val_p(s[i], 2) > lead)) return false;
    return true;
}

} // namespace

TEST(LocalMultiplicity, SumsToTorusCountWhenAllRootsArePositive) {
    std::mt19937 rng(41);
    int checked = 0;
    for (int it = 0; it < 400 && checked < 12; ++it) {
        // F(t / 2^6) cleared of denominators: every root valuation moves up by 6
        auto make = [&] {
            const auto F = random_bivariate(rng, 2, -9, 9);
            Coeffs c;
            for (const auto& t : F.terms())
                c.push_back({t.exponent, *t.coeff_exact * (1 << (6 * (4 - t.exponent[0] - t.exponent[1])))});
            return poly(2, 2, c);
        };
        const auto f = make(), g = make();
        const SeriesSystem s({f, g});
        const auto n = torus_count(s);
        if (!n || *n == 0) continue;
        const auto r1 = oracle::resultant_t2(to_bipoly(f), to_bipoly(g));
        const auto r2 = oracle::resultant_t2(to_bipoly(swap_vars(f)), to_bipoly(swap_vars(g)));
        if (r2.empty() || !roots_positive(r1) || !roots_positive(r2)) continue;
        const auto pts = tropical_intersection(f, g);
        if (!pts) continue;
        long long sum = 0;
        bool boundary = false;
        for (const auto& w : *pts) {
            if (w[0] == 0 || w[1] == 0) {
                boundary = true;
                continue;
            }
            sum += local_multiplicity(s, w);
        }
        if (boundary) continue;
        ++checked;
        EXPECT_EQ(sum, *n);
        EXPECT_LE(sum, bernstein_bound(s));
    }
    EXPECT_GE(checked, 10);
}

TEST(StableCount, Example) {
    const SeriesSystem s({line(), poly(2, 2, {{{0, 0}, 2}, {{1, 0}, 1}, {{0, 1}, -1}})});
    const auto c = stable_count_bound(s);
    EXPECT_EQ(c.interior, 1);
    EXPECT_EQ(c.strata.at({0}), 1);
    EXPECT_EQ(c.strata.at({1}), 1);
    EXPECT_EQ(c.strata.at({}), 0);
    EXPECT_EQ(c.total, 3);
}

TEST(StableCount, ExactUnitConstantsExcludeTheOrigin) {
    const SeriesSystem s({poly(3, 2, {{{0, 0}, 1}, {{2, 0}, 1}, {{0, 1}, 1}}),
                          poly(3, 2, {{{0, 0}, 2}, {{1, 0}, 1}, {{0, 3}, 1}})});
    EXPECT_EQ(stable_count_bound(s).strata.at({}), 0);
    const SeriesSystem v({ValuedSeries(3, 2, {valued_term({0, 0}, 0), valued_term({1, 0}, 0), valued_term({0, 1}, 0)}),
                          ValuedSeries(3, 2, {valued_term({0, 0}, 0), valued_term({1, 0}, 0), valued_term({0, 1}, 0)})});
    EXPECT_EQ(stable_count_bound(v).strata.at({}), 1);
}

TEST(StableCount, PureWorstCaseShape) {
    std::vector<ValuedTerm> ts;
    for (int n = 1; n <= 8; ++n) ts.push_back(valued_term({n}, -ord_p(Integer(n), 2)));
    const ValuedSeries part(2, 1, ts, TailCertificate::polynomial(), true);
    const auto F = assemble_pure({part, part}, Val(0));
    const SeriesSystem s({F, F}, BoxDomain::uniform(2, Rational(1, 2)));
    const auto viaPer = stable_count_bound(s, CountMethod::axis_permanent);
    EXPECT_EQ(viaPer.interior, 64);
    EXPECT_EQ(viaPer.strata.at({0}), 8);
    EXPECT_EQ(viaPer.strata.at({1}), 8);
    EXPECT_EQ(viaPer.strata.at({}), 1);
    EXPECT_EQ(viaPer.total, 81);
    EXPECT_EQ(stable_count_bound(s).total, 81);
}

TEST(StableCount, TruncatesPureMembers) {
    const auto part = antiderivative(poly(2, 1, [] {
        Coeffs c;
        for (int n = 0; n < 30; ++n) c.push_back({{n}, 1});
        return c;
    }()));
    const auto F = assemble_pure({part, part}, Val(0));
    const SeriesSystem s({F, F}, BoxDomain::uniform(2, Rational(1, 2)));
    // k = 1 in both variables: cutoff 4, so 4 * 4 * 2 / 2 + 4 + 4 + 1
    EXPECT_EQ(stable_count_bound(s).total, 25);
    EXPECT_THROW(stable_count_bound(SeriesSystem({F, F}, BoxDomain::uniform(2, Rational(1, 4)))), InputError);
}

TEST(NonvanishingPoly, Examples) {
    const auto f = poly(2, 2, {{{1, 0}, 1}, {{0, 1}, 1}});
    EXPECT_EQ(nonvanishing_poly(f, {Point{1, -1}}), poly(2, 2, {{{1, 0}, 1}}));
    const auto h = nonvanishing_poly(f, {Point{1, -1}, Point{0, 1}});
    EXPECT_EQ(h, poly(2, 2, {{{1, 0}, 1}, {{0, 1}, 2}}));
    EXPECT_EQ(h.evaluate({1, -1}), -1);
    EXPECT_EQ(h.evaluate({0, 1}), 2);
    EXPECT_THROW(nonvanishing_poly(poly(2, 2, {{{1, 1}, 1}}), {Point{1, 1}}), InputError);
    EXPECT_THROW(nonvanishing_poly(f, {Point{0, 0}}), InputError);
}

TEST(NonvanishingPoly, NeverVanishesOnRandomPoints) {
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> c(-3, 3);
    const auto f = poly(3, 2, {{{2, 0}, 1}, {{0, 1}, 5}, {{1, 1}, 1}, {{0, 0}, 1}});
    for (int it = 0; it < 30; ++it) {
        std::vector<Point> pts;
        while (pts.size() < 6) {
            Point q{c(rng), c(rng)};
            if (q[0] != 0 || q[1] != 0) pts.push_back(q);
        }
        const auto h = nonvanishing_poly(f, pts);
        for (const auto& t : h.terms()) EXPECT_NE(f.find(t.exponent), nullptr);
        for (const auto& q : pts) EXPECT_NE(h.evaluate(q), 0);
    }
}

TEST(Deform, DuplicatedLine) {
    const SeriesSystem s({line(), line()});
    const auto samples = oracle::grid(2, {0, 0}, Rational(1, 2), 10);
    const auto rep = deform_system(s, {{}, {Point{-1, -1}}}, samples);
    EXPECT_TRUE(rep.trop_preserved);
    EXPECT_TRUE(rep.gamma_preserved);
    EXPECT_EQ(rep.deformed.members()[0], line());
    EXPECT_EQ(rep.deformed.members()[1], poly(2, 2, {{{0, 0}, 2}, {{1, 0}, 3}, {{0, 1}, 1}}));
    EXPECT_FALSE(rep.perturbations[0].h.has_value());
    EXPECT_EQ(rep.perturbations[1].eps_val, Val(1));
    // no common zero in the torus remains
    EXPECT_EQ(torus_count(rep.deformed), 0);
    for (const auto& w : samples)
        EXPECT_EQ(trop_membership(rep.deformed.members()[1], w), trop_membership(line(), w));
}

TEST(Deform, IdentityWithoutWitnesses) {
    const SeriesSystem s({line(), poly(2, 2, {{{0, 0}, 4}, {{1, 0}, 1}, {{0, 1}, 8}})});
    const auto rep = deform_system(s, {{}, {}}, {Point{1, 1}});
    EXPECT_EQ(rep.deformed, s);
    EXPECT_TRUE(rep.trop_preserved);
    EXPECT_TRUE(rep.gamma_preserved);
}

TEST(Deform, Errors) {
    const SeriesSystem s({line(), line()});
    EXPECT_THROW(deform_system(s, {{}}, {}), InputError);
    EXPECT_THROW(deform_system(s, {{}, {Point{0, 1}}}, {}), InputError);
    EXPECT_THROW(deform_system(SeriesSystem({poly(2, 2, {{{1, 1}, 1}}), line()}), {{}, {}}, {}), InputError);
}

TEST(NewtonZeroCount, LocalContinuityFamilies) {
    struct Family {
        ValuedSeries f, h;
        Rational m;
        long long expected;
    };
    const std::vector<Family> fams{
        {poly(2, 1, {{{0}, 2}, {{1}, -3}, {{2}, 1}}), poly(2, 1, {{{0}, 1}, {{1}, 1}, {{2}, 1}}), Rational(1, 2), 1},
        {poly(2, 1, {{{0}, 8}, {{3}, 1}}), poly(2, 1, {{{1}, 1}}), Rational(1), 3},
        {poly(3, 1, {{{0}, -9}, {{2}, 1}}), poly(3, 1, {{{0}, 1}}), Rational(1), 2},
    };
    for (const auto& fam : fams) {
        EXPECT_EQ(newton_zero_count(fam.f, fam.m), fam.expected);
        Rational s = 1;
        std::vector<long long> counts;
        for (int e = 1; e <= 40; ++e) {
            s *= fam.f.prime();
            Coeffs c;
            std::map<ExponentVec, Rational> sum;
            for (const auto& t : fam.f.terms()) sum[t.exponent] += *t.coeff_exact;
            for (const auto& t : fam.h.terms()) sum[t.exponent] += s * *t.coeff_exact;
            for (const auto& [u, v] : sum)
                if (v != 0) c.push_back({u, v});
            counts.push_back(newton_zero_count(poly(fam.f.prime(), 1, c), fam.m));
        }
        // constant once v(s) is large enough
        for (std::size_t e = 5; e < counts.size(); ++e) EXPECT_EQ(counts[e], fam.expected);
    }
}
