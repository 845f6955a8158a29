#include <gtest/gtest.h>

#include <random>

#include <symchab/pure.hpp>
#include <symchab/tropical.hpp>

#include "oracles/tropical_scan.hpp"

using namespace symchab;
using namespace symchab::core;

namespace {

using Coeffs = std::vector<std::pair<ExponentVec, Rational>>;

// Integral differential whose reduction has order k - 1, stored to degree `deg`.
ValuedSeries differential(std::mt19937& rng, long long p, long long k, int deg) {
    std::uniform_int_distribution<int> c(-9, 9);
    Coeffs co;
    for (int n = 0; n <= deg; ++n) {
        Rational a;
        if (n < k - 1)
            a = p * c(rng);
        else if (n == k - 1)
            a = 1 + p * c(rng);
        else
            a = c(rng);
        if (a != 0) co.push_back({{n}, a});
    }
    return ValuedSeries::exact(p, 1, co);
}

ValuedSeries log_series(long long p, int deg) {
    Coeffs co;
    for (int n = 0; n < deg; ++n) co.push_back({{n}, 1});
    return antiderivative(ValuedSeries::exact(p, 1, co));
}

// Drops every term of total degree above `deg`, keeping a polynomial.
ValuedSeries cut_at(const ValuedSeries& F, int deg) {
    std::vector<ValuedTerm> kept;
    for (const auto& t : F.terms()) {
        int s = 0;
        for (auto e : t.exponent.entries()) s += e;
        if (s <= deg) kept.push_back(t);
    }
    return ValuedSeries(F.prime(), F.dim(), kept, TailCertificate::polynomial(), true);
}

std::set<ExponentVec> exps(const std::vector<ValuedTerm>& ts) {
    std::set<ExponentVec> s;
    for (const auto& t : ts) s.insert(t.exponent);
    return s;
}

} // namespace

TEST(Antiderivative, Examples) {
    const auto one = antiderivative(ValuedSeries::exact(2, 1, {{{0}, 1}}));
    ASSERT_EQ(one.terms().size(), 1u);
    EXPECT_EQ(one.terms()[0].exponent, ExponentVec{1});
    EXPECT_EQ(one.tail(), TailCertificate::pure({1}));
    EXPECT_TRUE(one.is_pure());

    for (int k = 1; k <= 6; ++k) {
        const auto f = antiderivative(ValuedSeries::exact(3, 1, {{{k - 1}, 1}}));
        EXPECT_EQ(f.terms()[0].exponent, ExponentVec{k});
        EXPECT_EQ(*f.terms()[0].coeff_exact, Rational(1, k));
        EXPECT_EQ(f.tail().vars[0].k, k);
    }

    const auto f = antiderivative(ValuedSeries::exact(2, 1, {{{0}, 1}, {{1}, 1}, {{2}, 1}}));
    std::vector<Val> vals;
    for (const auto& t : f.terms()) vals.push_back(t.coeff_val);
    EXPECT_EQ(vals, (std::vector<Val>{Val(0), Val(-1), Val(0)}));
    EXPECT_EQ(*f.terms()[2].coeff_exact, Rational(1, 3));
}

TEST(Antiderivative, ValuationOnlyTermsAndK) {
    // reduction starts at t^2, so k = 3
    const auto w = ValuedSeries(2, 1, {valued_term({0}, 1), valued_term({1}, 2), valued_term({2}, 0), valued_term({3}, 0)});
    const auto f = antiderivative(w);
    EXPECT_EQ(f.tail().vars[0].k, 3);
    EXPECT_EQ(f.find({4})->coeff_val, Val(-2));
}

TEST(Antiderivative, Errors) {
    EXPECT_THROW(antiderivative(ValuedSeries::exact(2, 1, {{{0}, Rational(1, 2)}})), InputError);
    EXPECT_THROW(antiderivative(ValuedSeries::exact(2, 1, {{{0}, 2}, {{1}, 4}})), InputError);
    EXPECT_THROW(antiderivative(ValuedSeries::exact(2, 2, {{{0, 0}, 1}})), InputError);
}

TEST(AssemblePure, Examples) {
    const auto t = ValuedSeries::exact(2, 1, {{{1}, 1}});
    const auto F = assemble_pure({t, t}, Val(0));
    EXPECT_EQ(F.terms().size(), 3u);
    for (const auto& term : F.terms()) EXPECT_EQ(term.coeff_val, Val(0));
    EXPECT_TRUE(F.is_pure());

    const auto part = ValuedSeries::exact(2, 1, {{{1}, 1}, {{2}, Rational(1, 2)}, {{3}, Rational(1, 3)}, {{4}, Rational(1, 4)}});
    const auto G = assemble_pure({part, part}, Val(0));
    EXPECT_EQ(G.terms().size(), 9u);
    for (const auto& term : G.terms()) EXPECT_LE(term.exponent.support_size(), 1u);

    EXPECT_EQ(assemble_pure({t, t}, Val()).terms().size(), 2u);
}

TEST(AssemblePure, Errors) {
    const auto t2 = ValuedSeries::exact(2, 1, {{{1}, 1}});
    const auto t3 = ValuedSeries::exact(3, 1, {{{1}, 1}});
    EXPECT_THROW(assemble_pure({t2, t3}, Val(0)), InputError);
    EXPECT_THROW(assemble_pure({ValuedSeries::exact(2, 1, {{{0}, 1}, {{1}, 1}})}, Val(0)), InputError);
    EXPECT_THROW(assemble_pure({t2, log_series(2, 10)}, Val(0)), InputError);
    EXPECT_THROW(assemble_pure({}, Val(0)), InputError);
}

TEST(TruncatePure, CutoffDegrees) {
    EXPECT_EQ(truncation_cutoff(1, 2, 2), 4);
    EXPECT_EQ(truncation_cutoff(4, 2, 2), 4);
    EXPECT_EQ(truncation_cutoff(3, 2, 2), 8);
    const auto F = assemble_pure({log_series(2, 30)}, Val(0));
    const auto T = truncate_pure(F, BoxDomain::uniform(1, Rational(1, 2)), 2);
    EXPECT_TRUE(T.is_polynomial());
    EXPECT_EQ(T.stored_degree(0), 4);
    EXPECT_EQ(T.terms().size(), 5u);
}

TEST(TruncatePure, Errors) {
    const auto F = assemble_pure({log_series(2, 30)}, Val(0));
    EXPECT_THROW(truncate_pure(F, BoxDomain::uniform(1, Rational(1, 3)), 2), InputError);
    EXPECT_THROW(truncate_pure(ValuedSeries::exact(2, 1, {{{1}, 1}}, true), BoxDomain::uniform(1, 1), 2), InputError);
    // stored support shorter than the cutoff
    EXPECT_THROW(truncate_pure(assemble_pure({log_series(2, 3)}, Val(0)), BoxDomain::uniform(1, 1), 2), InputError);
}

TEST(TruncatePure, SmallWeightsBreakTheCutoff) {
    // At w = 1/10 the t^8/8 term undercuts everything kept by the l = 2 cutoff,
    // which is why truncate_pure insists on w_i >= 1/l.
    const auto F = log_series(2, 40);
    const auto r = vert_w(F, Point{Rational(1, 10)});
    EXPECT_GT(r.terms.front().exponent[0], 4);
}

TEST(TruncatePure, VertDomainStableUnderDeeperTruncation) {
    std::mt19937 rng(21);
    const BoxDomain P = BoxDomain::uniform(2, Rational(1, 2));
    for (long long k1 = 1; k1 <= 5; ++k1)
        for (long long k2 = 1; k2 <= 5; ++k2) {
            const auto F = assemble_pure({antiderivative(differential(rng, 2, k1, 40)),
                                          antiderivative(differential(rng, 2, k2, 40))},
                                         Val(0));
            const auto T = truncate_pure(F, P, 2);
            const int deep = static_cast<int>(std::max(truncation_cutoff(k1, 2, 2), truncation_cutoff(k2, 2, 2))) + 20;
            const auto D = cut_at(F, deep);
            EXPECT_EQ(exps(vert_domain(T, P)), exps(vert_domain(D, P))) << k1 << " " << k2;
            EXPECT_EQ(exps(vert_domain(T, P)), exps(vert_domain(F, P)));
            for (const auto& w : oracle::grid(2, P.m, Rational(1, 3), 10)) EXPECT_EQ(gamma_w(T, w), gamma_w(D, w));
        }
}

TEST(TruncatePure, AuxiliaryPolynomialOfLogSeries) {
    const auto F = log_series(2, 30);
    const BoxDomain P = BoxDomain::uniform(1, Rational(1, 2));
    const auto g = auxiliary_polynomial(F, {{1}, {2}, {3}, {4}}, P);
    const Coeffs expected{{{1}, 1}, {{2}, Rational(1, 2)}, {{3}, Rational(1, 3)}, {{4}, Rational(1, 4)}};
    EXPECT_EQ(g, ValuedSeries::exact(2, 1, expected, true));
    for (const auto& w : oracle::grid(1, P.m, Rational(1, 7), 100))
        EXPECT_EQ(trop_membership(F, w, P), trop_membership(g, w, P));
    EXPECT_THROW(auxiliary_polynomial(F, {{1}, {2}, {3}}, P), ContractViolation);
}

TEST(TruncatePure, TailNeedsPositiveWeights) {
    const auto F = log_series(2, 30);
    EXPECT_THROW(vert_w(F, Point{Rational(0)}), InputError);
    EXPECT_THROW(vert_domain(F, BoxDomain::orthant(1)), InputError);
    EXPECT_NO_THROW(vert_w(F, Point{Rational(1)}));
}
