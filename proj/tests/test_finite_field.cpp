#include <gtest/gtest.h>

#include <random>

#include <symchab/finite_field.hpp>

#include "oracles/point_count.hpp"

using namespace symchab;
using namespace symchab::ff;

namespace {

oracle::NaiveField naive(const Field& F) { return {F.characteristic(), F.degree(), F.modulus()}; }

bool lex_less(const Poly& a, const Poly& b) {
    for (int i = static_cast<int>(a.size()) - 2; i >= 0; --i)
        if (a[i] != b[i]) return a[i] < b[i];
    return false;
}

} // namespace

TEST(PolyOps, GcdAndDerivative) {
    // (x+1)^2 (x+2) over F_3 = x^3 + x^2 + 2x + 2
    const Poly f{2, 2, 1, 1};
    EXPECT_EQ(derivative(f, 3), (Poly{2, 2}));
    EXPECT_EQ(gcd(f, derivative(f, 3), 3), (Poly{1, 1}));
    EXPECT_EQ(gcd(Poly{1, 0, 1}, Poly{0, 1}, 2), (Poly{1}));
    EXPECT_EQ(rem(Poly{0, 0, 0, 1}, Poly{1, 1, 0, 1}, 2), (Poly{1, 1}));
    EXPECT_TRUE(derivative(Poly{1, 0, 1}, 2).empty());
}

TEST(PolyOps, KnownModuli) {
    EXPECT_EQ(least_irreducible(2, 2), (Poly{1, 1, 1}));
    EXPECT_EQ(least_irreducible(2, 3), (Poly{1, 1, 0, 1}));
    EXPECT_EQ(least_irreducible(3, 2), (Poly{1, 0, 1}));
    EXPECT_EQ(least_irreducible(3, 3), (Poly{1, 2, 0, 1}));
    EXPECT_EQ(least_irreducible(5, 1), (Poly{0, 1}));
}

TEST(PolyOps, LeastIrreducibleMatchesTrialDivision) {
    for (int p : {2, 3, 5})
        for (int e = 1; e <= (p == 2 ? 8 : p == 3 ? 5 : 3); ++e) {
            const Poly m = least_irreducible(p, e);
            ASSERT_TRUE(oracle::irreducible_by_trial_division(m, p)) << p << "^" << e;
            for (const auto& f : oracle::monic_polys(p, e)) {
                if (!lex_less(f, m)) continue;
                EXPECT_FALSE(oracle::irreducible_by_trial_division(f, p)) << p << "^" << e;
            }
            for (const auto& f : oracle::monic_polys(p, e))
                EXPECT_EQ(is_irreducible(f, p), oracle::irreducible_by_trial_division(f, p));
        }
}

TEST(FieldArithmetic, MultiplicationMatchesNaive) {
    for (auto [p, e] : {std::pair{2, 1}, {2, 3}, {2, 4}, {3, 2}, {3, 3}, {5, 2}, {7, 1}}) {
        const Field F(p, e);
        const auto N = naive(F);
        ASSERT_EQ(F.size(), N.size());
        for (std::uint32_t a = 0; a < F.size(); ++a)
            for (std::uint32_t b = 0; b < F.size(); ++b) {
                ASSERT_EQ(F.mul(a, b), N.mul(a, b)) << p << "^" << e << " " << a << "*" << b;
                ASSERT_EQ(F.add(a, b), N.add(a, b));
            }
    }
}

TEST(FieldArithmetic, Axioms) {
    std::mt19937 rng(7);
    for (auto [p, e] : {std::pair{2, 6}, {3, 4}, {5, 3}, {11, 2}, {2, 10}}) {
        const Field F(p, e);
        std::uniform_int_distribution<std::uint32_t> pick(0, F.size() - 1);
        for (int t = 0; t < 300; ++t) {
            const auto a = pick(rng), b = pick(rng), c = pick(rng);
            EXPECT_EQ(F.mul(a, F.add(b, c)), F.add(F.mul(a, b), F.mul(a, c)));
            EXPECT_EQ(F.add(a, F.neg(a)), 0u);
            EXPECT_EQ(F.sub(F.add(a, b), b), a);
            EXPECT_EQ(F.frobenius(F.add(a, b)), F.add(F.frobenius(a), F.frobenius(b)));
            EXPECT_EQ(F.pow(a, F.size()), a);
            if (a != 0) {
                EXPECT_EQ(F.mul(a, F.inv(a)), 1u);
            }
            const int tr = F.trace(a);
            EXPECT_GE(tr, 0);
            EXPECT_LT(tr, p);
            for (auto r : F.sqrt(F.mul(a, a))) EXPECT_EQ(F.mul(r, r), F.mul(a, a));
            if (p != 2 && a != 0 && b != 0) {
                EXPECT_EQ(F.quadratic_character(F.mul(a, b)), F.quadratic_character(a) * F.quadratic_character(b));
            }
        }
    }
}

TEST(FieldArithmetic, SquareRootsAndCharacterCounts) {
    for (auto [p, e] : {std::pair{3, 3}, {5, 2}, {2, 5}}) {
        const Field F(p, e);
        const auto N = naive(F);
        for (std::uint32_t a = 0; a < F.size(); ++a) {
            std::set<std::uint32_t> roots;
            for (std::uint32_t y = 0; y < F.size(); ++y)
                if (N.mul(y, y) == a) roots.insert(y);
            const auto got = F.sqrt(a);
            EXPECT_EQ(std::set<std::uint32_t>(got.begin(), got.end()), roots);
            if (p != 2) {
                EXPECT_EQ(F.quadratic_character(a), roots.empty() ? -1 : (a == 0 ? 0 : 1));
            }
        }
    }
}

TEST(FieldArithmetic, PrimeSubfieldEmbedding) {
    const Field F(3, 4);
    EXPECT_EQ(F.from_int(-1), 2u);
    EXPECT_EQ(F.from_int(7), 1u);
    EXPECT_EQ(F.mul(2, 2), 1u);
    EXPECT_EQ(F.eval(Poly{1, 0, 1}, 0), 1u);
    // x itself is a root of the modulus
    EXPECT_EQ(F.eval(F.modulus(), 3), 0u);
}

TEST(FieldArithmetic, RejectsBadParameters) {
    EXPECT_THROW(Field(4, 2), InputError);
    EXPECT_THROW(Field(2, 0), InputError);
    EXPECT_THROW(Field(2, 23), InputError);
    EXPECT_THROW(Field(2, 1).inv(0), InputError);
}
