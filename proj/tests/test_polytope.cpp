#include <gtest/gtest.h>

#include <random>

#include <symchab/polytope.hpp>

#include "oracles/mixed_volume.hpp"

using namespace symchab;
using namespace symchab::polytope;

namespace {

Polytope hull(std::initializer_list<std::initializer_list<long long>> pts, std::size_t d) {
    std::vector<Point> v;
    for (auto p : pts) v.push_back(make_point(p));
    return convex_hull(v, d);
}

Polytope simplex(std::size_t d, long long s) {
    std::vector<Point> v{Point(d, Rational(0))};
    for (std::size_t i = 0; i < d; ++i) {
        Point e(d, Rational(0));
        e[i] = s;
        v.push_back(e);
    }
    return convex_hull(v, d);
}

Polytope random_polytope(std::mt19937& rng, std::size_t d) {
    std::uniform_int_distribution<int> n(d + 1, d + 4), num(0, 10), den(1, 2);
    std::vector<Point> v;
    const int count = n(rng);
    for (int i = 0; i < count; ++i) {
        Point p;
        for (std::size_t c = 0; c < d; ++c) p.push_back(Rational(num(rng), den(rng)));
        v.push_back(p);
    }
    return convex_hull(v, d);
}

} // namespace

TEST(ConvexHull, DropsInteriorPoints) {
    std::vector<Point> v{make_point({0, 0}), make_point({1, 0}), make_point({0, 1}), Point{Rational(1, 4), Rational(1, 4)}};
    EXPECT_EQ(convex_hull(v, 2).vertices(),
              (std::vector<Point>{make_point({0, 0}), make_point({0, 1}), make_point({1, 0})}));
}

TEST(ConvexHull, CollinearGivesSegment) {
    EXPECT_EQ(hull({{0, 0}, {1, 1}, {2, 2}}, 2).vertices(), (std::vector<Point>{make_point({0, 0}), make_point({2, 2})}));
}

TEST(ConvexHull, SquareKeepsCorners) {
    EXPECT_EQ(hull({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, 2).vertices().size(), 4u);
}

TEST(ConvexHull, EmptyAndPoint) {
    EXPECT_TRUE(convex_hull({}, 3).is_empty());
    EXPECT_EQ(hull({{1, 2, 3}, {1, 2, 3}}, 3).vertices().size(), 1u);
    EXPECT_EQ(affine_dimension(hull({{1, 2, 3}}, 3)), 0);
}

TEST(ConvexHull, CubeAndCrossPolytopeIn4D) {
    std::vector<Point> cube;
    for (int m = 0; m < 16; ++m) cube.push_back(make_point({m & 1, (m >> 1) & 1, (m >> 2) & 1, (m >> 3) & 1}));
    cube.push_back(Point(4, Rational(1, 2)));
    const auto C = convex_hull(cube, 4);
    EXPECT_EQ(C.vertices().size(), 16u);
    EXPECT_EQ(volume(C), 1);
    std::vector<Point> cross;
    for (int i = 0; i < 4; ++i)
        for (int s : {-1, 1}) {
            Point p(4, Rational(0));
            p[i] = s;
            cross.push_back(p);
        }
    EXPECT_EQ(volume(convex_hull(cross, 4)), Rational(16, 24));
}

TEST(ConvexHull, Errors) {
    EXPECT_THROW(convex_hull({make_point({0, 0}), make_point({1})}, 2), InputError);
    EXPECT_THROW(convex_hull({make_point({0, 0, 0, 0, 0})}, 5), InputError);
}

TEST(Minkowski, Quadrilateral) {
    const auto S = minkowski_sum(hull({{0, 0}, {2, 0}, {0, 1}}, 2), hull({{0, 0}, {1, 0}, {0, 2}}, 2));
    EXPECT_EQ(S, hull({{0, 0}, {3, 0}, {2, 2}, {0, 3}}, 2));
    EXPECT_EQ(volume(S), 6);
}

TEST(Minkowski, PointTranslatesAndSegmentsMakeSquare) {
    const auto P = hull({{0, 0}, {2, 0}, {0, 1}}, 2);
    EXPECT_EQ(minkowski_sum(P, hull({{5, -1}}, 2)), translate(P, make_point({5, -1})));
    EXPECT_EQ(minkowski_sum(hull({{0, 0}, {1, 0}}, 2), hull({{0, 0}, {0, 1}}, 2)),
              hull({{0, 0}, {1, 0}, {0, 1}, {1, 1}}, 2));
    EXPECT_THROW(minkowski_sum(P, simplex(3, 1)), InputError);
}

TEST(Volume, Examples) {
    EXPECT_EQ(volume(simplex(2, 1)), Rational(1, 2));
    EXPECT_EQ(volume(simplex(2, 8)), 32);
    EXPECT_EQ(volume(hull({{0, 0}, {3, 4}}, 2)), 0);
    EXPECT_EQ(volume(simplex(3, 1)), Rational(1, 6));
    EXPECT_EQ(volume(simplex(4, 2)), Rational(16, 24));
}

TEST(Volume, MatchesShoelaceAndIsTranslationInvariant) {
    std::mt19937 rng(7);
    for (int it = 0; it < 40; ++it) {
        const auto P = random_polytope(rng, 2);
        EXPECT_EQ(volume(P), oracle::planar_hull_area(P.vertices()));
        const auto Q = random_polytope(rng, 2);
        EXPECT_EQ(volume(minkowski_sum(P, Q)), volume(minkowski_sum(translate(P, make_point({3, -2})), Q)));
    }
}

TEST(MixedVolume, Examples) {
    EXPECT_EQ(mixed_volume({simplex(2, 1), simplex(2, 1)}), 1);
    EXPECT_EQ(mixed_volume({hull({{0, 0}, {2, 0}, {0, 1}}, 2), hull({{0, 0}, {1, 0}, {0, 2}}, 2)}), 4);
    EXPECT_EQ(mixed_volume({simplex(2, 8), simplex(2, 8)}), 64);
    EXPECT_EQ(mixed_volume({simplex(3, 1), simplex(3, 1), simplex(3, 1)}), 1);
    EXPECT_EQ(mixed_volume({Polytope::empty(2), simplex(2, 1)}), 0);
    EXPECT_THROW(mixed_volume({simplex(2, 1)}), InputError);
}

TEST(MixedVolume, DiagonalEqualsFactorialTimesVolume) {
    std::mt19937 rng(11);
    for (std::size_t d = 1; d <= 3; ++d)
        for (int it = 0; it < 5; ++it) {
            const auto Q = random_polytope(rng, d);
            const std::vector<Polytope> same(d, Q);
            Rational fact = 1;
            for (std::size_t i = 2; i <= d; ++i) fact *= static_cast<long long>(i);
            EXPECT_EQ(mixed_volume(same), fact * volume(Q));
        }
}

TEST(MixedVolume, SymmetricAndMultilinear) {
    std::mt19937 rng(5);
    for (int it = 0; it < 10; ++it) {
        const auto A = random_polytope(rng, 2), B = random_polytope(rng, 2), C = random_polytope(rng, 2);
        EXPECT_EQ(mixed_volume({A, B}), mixed_volume({B, A}));
        EXPECT_EQ(mixed_volume({minkowski_sum(A, C), B}), mixed_volume({A, B}) + mixed_volume({C, B}));
        EXPECT_EQ(mixed_volume({scale(A, 3), B}), 3 * mixed_volume({A, B}));
    }
}

TEST(MixedVolume, MatchesCoefficientExtraction) {
    std::mt19937 rng(3);
    for (std::size_t d : {2u, 3u})
        for (int it = 0; it < 8; ++it) {
            std::vector<Polytope> Q;
            for (std::size_t i = 0; i < d; ++i) Q.push_back(random_polytope(rng, d));
            EXPECT_EQ(mixed_volume(Q), oracle::mixed_volume_by_coefficient(Q));
        }
}

TEST(Permanent, Examples) {
    EXPECT_EQ(permanent(SquareMatrix{{8, 8}, {8, 8}}), 128);
    EXPECT_EQ(permanent(SquareMatrix{{1, 2}, {3, 4}}), 10);
    for (std::size_t n = 0; n <= 6; ++n) {
        SquareMatrix I(n);
        for (std::size_t i = 0; i < n; ++i) I(i, i) = 1;
        EXPECT_EQ(permanent(I), 1);
    }
    EXPECT_THROW(permanent(SquareMatrix(13)), InputError);
}

TEST(Permanent, MatchesPermutationSum) {
    std::mt19937 rng(9);
    std::uniform_int_distribution<int> ent(-5, 9);
    for (std::size_t n = 1; n <= 6; ++n) {
        SquareMatrix A(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) A(i, j) = ent(rng);
        std::vector<std::size_t> sigma(n);
        for (std::size_t i = 0; i < n; ++i) sigma[i] = i;
        Rational brute = 0;
        do {
            Rational prod = 1;
            for (std::size_t i = 0; i < n; ++i) prod *= A(i, sigma[i]);
            brute += prod;
        } while (std::next_permutation(sigma.begin(), sigma.end()));
        EXPECT_EQ(permanent(A), brute);
    }
}

TEST(AxisSimplex, Examples) {
    const auto all8 = axis_simplex_mv(SquareMatrix{{8, 8}, {8, 8}});
    EXPECT_EQ(all8.per_over_dfact, 64);
    EXPECT_EQ(all8.exact_mv, 64);
    EXPECT_TRUE(all8.agree);
    const auto skew = axis_simplex_mv(SquareMatrix{{2, 1}, {1, 2}});
    EXPECT_EQ(skew.per_over_dfact, Rational(5, 2));
    EXPECT_EQ(skew.exact_mv, 4);
    EXPECT_FALSE(skew.agree);
    for (std::size_t d = 1; d <= 4; ++d) {
        SquareMatrix ones(d);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) ones(i, j) = 1;
        const auto r = axis_simplex_mv(ones);
        EXPECT_EQ(r.per_over_dfact, 1);
        EXPECT_EQ(r.exact_mv, 1);
    }
    EXPECT_THROW(axis_simplex_mv(SquareMatrix{{1, 0}, {1, 1}}), InputError);
}

TEST(AxisSimplex, HomotheticRowsAlwaysAgree) {
    std::mt19937 rng(13);
    std::uniform_int_distribution<int> ent(1, 6), scale(1, 4);
    for (std::size_t d = 1; d <= 3; ++d)
        for (int it = 0; it < 6; ++it) {
            std::vector<int> base(d);
            for (auto& b : base) b = ent(rng);
            SquareMatrix A(d);
            for (std::size_t i = 0; i < d; ++i) {
                const int s = scale(rng);
                for (std::size_t j = 0; j < d; ++j) A(i, j) = s * base[j];
            }
            EXPECT_TRUE(axis_simplex_mv(A).agree);
        }
}
