#ifndef SYMCHAB_POLYTOPE_HPP
#define SYMCHAB_POLYTOPE_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "lp.hpp"
#include "rational.hpp"

namespace symchab::polytope {

inline constexpr std::size_t max_dim = 4;

/// A convex polytope with exact rational vertices in R^d, d <= 4.
///
/// Always stored canonically: the vertex set of the hull, deduplicated and
/// sorted lexicographically. The empty polytope has no vertices.
class Polytope {
public:
    Polytope() = default;
    static Polytope empty(std::size_t dim) { return Polytope(dim, {}); }

    std::size_t dim() const { return dim_; }
    const std::vector<Point>& vertices() const { return vertices_; }
    bool is_empty() const { return vertices_.empty(); }

    friend bool operator==(const Polytope&, const Polytope&) = default;

private:
    Polytope(std::size_t dim, std::vector<Point> v) : dim_(dim), vertices_(std::move(v)) {}
    friend Polytope convex_hull(std::vector<Point> points, std::size_t dim);

    std::size_t dim_ = 0;
    std::vector<Point> vertices_;
};

namespace detail {

inline Rational det(std::vector<std::vector<Rational>> m) {
    const std::size_t n = m.size();
    Rational d = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = n;
        for (std::size_t r = c; r < n; ++r)
            if (m[r][c] != 0) {
                piv = r;
                break;
            }
        if (piv == n) return 0;
        if (piv != c) {
            std::swap(m[piv], m[c]);
            d = -d;
        }
        d *= m[c][c];
        for (std::size_t r = c + 1; r < n; ++r) {
            if (m[r][c] == 0) continue;
            const Rational f = m[r][c] / m[c][c];
            for (std::size_t j = c; j < n; ++j) m[r][j] -= f * m[c][j];
        }
    }
    return d;
}

inline Rational factorial(std::size_t n) {
    Rational f = 1;
    for (std::size_t i = 2; i <= n; ++i) f *= static_cast<long>(i);
    return f;
}

/// Row-reduces the directions p_i - p_0; returns the pivot columns. Their count
/// is the affine dimension, and projecting onto them is injective on the
/// affine hull.
inline std::vector<std::size_t> affine_pivots(const std::vector<Point>& pts, std::size_t dim) {
    std::vector<std::vector<Rational>> m;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        Point r(dim);
        for (std::size_t j = 0; j < dim; ++j) r[j] = pts[i][j] - pts[0][j];
        m.push_back(std::move(r));
    }
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t c = 0; c < dim && row < m.size(); ++c) {
        std::size_t piv = m.size();
        for (std::size_t r = row; r < m.size(); ++r)
            if (m[r][c] != 0) {
                piv = r;
                break;
            }
        if (piv == m.size()) continue;
        std::swap(m[piv], m[row]);
        for (std::size_t r = row + 1; r < m.size(); ++r) {
            if (m[r][c] == 0) continue;
            const Rational f = m[r][c] / m[row][c];
            for (std::size_t j = c; j < dim; ++j) m[r][j] -= f * m[row][j];
        }
        pivots.push_back(c);
        ++row;
    }
    return pivots;
}

struct Facet {
    std::vector<std::size_t> idx; // sorted point indices
    Point normal;                 // unnormalized; normal . x - offset < 0 inside
    Rational offset;
    bool alive = true;

    Rational eval(const Point& x) const { return dot(normal, x) - offset; }
};

/// Hyperplane through k points in R^k, oriented so that `inside` evaluates negative.
inline Facet make_facet(const std::vector<Point>& pts, std::vector<std::size_t> idx,
                        const Point& inside) {
    const std::size_t k = pts[idx[0]].size();
    std::sort(idx.begin(), idx.end());
    std::vector<Point> dirs;
    for (std::size_t i = 1; i < idx.size(); ++i) {
        Point d(k);
        for (std::size_t j = 0; j < k; ++j) d[j] = pts[idx[i]][j] - pts[idx[0]][j];
        dirs.push_back(std::move(d));
    }
    // generalized cross product: cofactors along an appended row
    Point n(k);
    for (std::size_t c = 0; c < k; ++c) {
        std::vector<std::vector<Rational>> minor;
        for (const auto& d : dirs) {
            std::vector<Rational> r;
            for (std::size_t j = 0; j < k; ++j)
                if (j != c) r.push_back(d[j]);
            minor.push_back(std::move(r));
        }
        n[c] = ((k - 1 + c) % 2 == 0 ? 1 : -1) * det(std::move(minor));
    }
    Facet f{std::move(idx), std::move(n), 0, true};
    f.offset = dot(f.normal, pts[f.idx[0]]);
    if (f.eval(inside) > 0) {
        for (auto& x : f.normal) x = -x;
        f.offset = -f.offset;
    }
    return f;
}

struct HullResult {
    std::vector<std::size_t> candidates; // indices of the hull's vertices
    Rational volume;                     // k-dimensional volume in the given coordinates
};

/// Placing triangulation of full-dimensional points in R^k (k >= 1).
inline HullResult placing_hull(const std::vector<Point>& pts) {
    const std::size_t k = pts[0].size();
    HullResult out;
    if (k == 1) {
        std::size_t lo = 0, hi = 0;
        for (std::size_t i = 1; i < pts.size(); ++i) {
            if (pts[i][0] < pts[lo][0]) lo = i;
            if (pts[i][0] > pts[hi][0]) hi = i;
        }
        out.candidates = {lo, hi};
        out.volume = pts[hi][0] - pts[lo][0];
        return out;
    }
    // initial simplex: greedily grow an affinely independent set
    std::vector<std::size_t> simplex{0};
    for (std::size_t i = 1; i < pts.size() && simplex.size() < k + 1; ++i) {
        std::vector<Point> trial;
        for (auto s : simplex) trial.push_back(pts[s]);
        trial.push_back(pts[i]);
        if (affine_pivots(trial, k).size() == simplex.size()) simplex.push_back(i);
    }
    Point center(k, Rational(0));
    for (auto s : simplex)
        for (std::size_t j = 0; j < k; ++j) center[j] += pts[s][j];
    for (auto& x : center) x /= static_cast<long>(k + 1);

    std::vector<Facet> facets;
    for (std::size_t drop = 0; drop <= k; ++drop) {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i <= k; ++i)
            if (i != drop) idx.push_back(simplex[i]);
        facets.push_back(make_facet(pts, idx, center));
    }
    {
        std::vector<std::vector<Rational>> m;
        for (std::size_t i = 1; i <= k; ++i) {
            std::vector<Rational> r(k);
            for (std::size_t j = 0; j < k; ++j) r[j] = pts[simplex[i]][j] - pts[simplex[0]][j];
            m.push_back(std::move(r));
        }
        out.volume = abs(det(std::move(m)));
    }

    std::vector<bool> in_simplex(pts.size(), false);
    for (auto s : simplex) in_simplex[s] = true;
    for (std::size_t q = 0; q < pts.size(); ++q) {
        if (in_simplex[q]) continue;
        std::map<std::vector<std::size_t>, int> ridge_count;
        bool any = false;
        for (auto& f : facets) {
            if (!f.alive) continue;
            const Rational h = f.eval(pts[q]);
            if (h <= 0) continue;
            any = true;
            out.volume += h;
            f.alive = false;
            for (std::size_t drop = 0; drop < f.idx.size(); ++drop) {
                std::vector<std::size_t> r;
                for (std::size_t i = 0; i < f.idx.size(); ++i)
                    if (i != drop) r.push_back(f.idx[i]);
                ++ridge_count[r];
            }
        }
        if (!any) continue;
        std::vector<Facet> fresh;
        for (const auto& [ridge, cnt] : ridge_count) {
            if (cnt != 1) continue;
            auto idx = ridge;
            idx.push_back(q);
            fresh.push_back(make_facet(pts, std::move(idx), center));
        }
        std::erase_if(facets, [](const Facet& f) { return !f.alive; });
        for (auto& f : fresh) facets.push_back(std::move(f));
    }
    out.volume /= factorial(k);
    // A boundary point is a vertex iff the normals of its incident facets span R^k.
    std::map<std::size_t, std::vector<Point>> incident;
    for (const auto& f : facets)
        for (auto i : f.idx) incident[i].push_back(f.normal);
    for (auto& [i, normals] : incident) {
        normals.push_back(Point(k, Rational(0)));
        if (affine_pivots(normals, k).size() == k) out.candidates.push_back(i);
    }
    return out;
}

/// True when p is a convex combination of the others.
inline bool in_convex_hull(const Point& p, const std::vector<Point>& others) {
    if (others.empty()) return false;
    const std::size_t k = p.size();
    lp::Problem prob(others.size());
    for (std::size_t j = 0; j < k; ++j) {
        lp::Row r(others.size());
        for (std::size_t i = 0; i < others.size(); ++i) r[i] = others[i][j];
        prob.add_eq(std::move(r), p[j]);
    }
    prob.add_eq(lp::Row(others.size(), Rational(1)), 1);
    return prob.solve().status != lp::Status::infeasible;
}

inline void check_dim(std::size_t dim) {
    if (dim > max_dim)
        throw InputError("polytope dimension " + std::to_string(dim) + " exceeds " +
                         std::to_string(max_dim));
}

struct Reduced {
    std::vector<Point> pts;         // deduplicated, sorted, original coordinates
    std::vector<std::size_t> coords; // coordinates spanning the affine hull
};

inline Reduced reduce(std::vector<Point> points, std::size_t dim) {
    check_dim(dim);
    for (const auto& p : points)
        if (p.size() != dim) throw InputError("points of mixed dimension");
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    Reduced r;
    r.pts = std::move(points);
    if (!r.pts.empty()) r.coords = affine_pivots(r.pts, dim);
    return r;
}

inline std::vector<Point> project(const Reduced& r) {
    std::vector<Point> out;
    out.reserve(r.pts.size());
    for (const auto& p : r.pts) {
        Point q;
        for (auto c : r.coords) q.push_back(p[c]);
        out.push_back(std::move(q));
    }
    return out;
}

} // namespace detail

/// Canonical vertex set of conv(points). Exact; no floating point anywhere.
inline Polytope convex_hull(std::vector<Point> points, std::size_t dim) {
    auto red = detail::reduce(std::move(points), dim);
    if (red.pts.size() <= 1 || red.coords.empty()) {
        if (red.pts.size() > 1) red.pts.resize(1);
        return Polytope(dim, std::move(red.pts));
    }
    const auto proj = detail::project(red);
    const auto hull = detail::placing_hull(proj);
    std::vector<Point> verts;
    for (auto i : hull.candidates) verts.push_back(red.pts[i]);
    std::sort(verts.begin(), verts.end());
    return Polytope(dim, std::move(verts));
}

/// Affine dimension of the polytope; -1 for the empty one.
inline int affine_dimension(const Polytope& P) {
    if (P.is_empty()) return -1;
    return static_cast<int>(detail::affine_pivots(P.vertices(), P.dim()).size());
}

inline Polytope minkowski_sum(const Polytope& A, const Polytope& B) {
    if (A.dim() != B.dim()) throw InputError("minkowski_sum: dimension mismatch");
    if (A.is_empty() || B.is_empty()) return Polytope::empty(A.dim());
    std::vector<Point> sums;
    sums.reserve(A.vertices().size() * B.vertices().size());
    for (const auto& a : A.vertices())
        for (const auto& b : B.vertices()) {
            Point s(A.dim());
            for (std::size_t i = 0; i < A.dim(); ++i) s[i] = a[i] + b[i];
            sums.push_back(std::move(s));
        }
    return convex_hull(std::move(sums), A.dim());
}

inline Polytope scale(const Polytope& P, const Rational& lambda) {
    std::vector<Point> v = P.vertices();
    for (auto& p : v)
        for (auto& x : p) x *= lambda;
    return convex_hull(std::move(v), P.dim());
}

inline Polytope translate(const Polytope& P, const Point& t) {
    if (t.size() != P.dim()) throw InputError("translate: dimension mismatch");
    std::vector<Point> v = P.vertices();
    for (auto& p : v)
        for (std::size_t i = 0; i < t.size(); ++i) p[i] += t[i];
    return convex_hull(std::move(v), P.dim());
}

/// Euclidean d-volume; 0 for polytopes that are not full-dimensional.
inline Rational volume(const Polytope& P) {
    if (P.is_empty() || affine_dimension(P) < static_cast<int>(P.dim()) || P.dim() == 0) return 0;
    return detail::placing_hull(P.vertices()).volume;
}

/// Coefficient of lambda_1...lambda_d in vol(lambda_1 Q_1 + ... + lambda_d Q_d),
/// by inclusion-exclusion over the 2^d - 1 partial Minkowski sums.
inline Rational mixed_volume(const std::vector<Polytope>& Q) {
    const std::size_t d = Q.size();
    if (d == 0) throw InputError("mixed_volume of no polytopes");
    for (const auto& q : Q)
        if (q.dim() != d)
            throw InputError("mixed_volume needs " + std::to_string(d) +
                             " polytopes in dimension " + std::to_string(d));
    detail::check_dim(d);
    for (const auto& q : Q)
        if (q.is_empty()) return 0;
    std::vector<Polytope> sums(std::size_t{1} << d);
    Rational mv = 0;
    for (std::size_t mask = 1; mask < sums.size(); ++mask) {
        std::size_t top = 0;
        while ((mask >> (top + 1)) != 0) ++top;
        const std::size_t rest = mask & ~(std::size_t{1} << top);
        sums[mask] = rest == 0 ? Q[top] : minkowski_sum(sums[rest], Q[top]);
        const auto bits = static_cast<std::size_t>(__builtin_popcountll(mask));
        const Rational v = volume(sums[mask]);
        if ((d - bits) % 2 == 0) mv += v;
        else mv -= v;
    }
    return mv;
}

/// Dense square matrix of exact rationals.
class SquareMatrix {
public:
    SquareMatrix() = default;
    explicit SquareMatrix(std::size_t n, const Rational& fill = 0) : n_(n), a_(n * n, fill) {}
    SquareMatrix(std::initializer_list<std::initializer_list<long long>> rows) : n_(rows.size()) {
        for (const auto& r : rows) {
            if (r.size() != n_) throw InputError("matrix is not square");
            for (long long x : r) a_.emplace_back(x);
        }
    }
    static SquareMatrix from_rows(const std::vector<std::vector<Rational>>& rows) {
        SquareMatrix m(rows.size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != rows.size()) throw InputError("matrix is not square");
            for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    std::size_t order() const { return n_; }
    Rational& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

    /// Rows `rows` (in the given order) and the first rows.size() columns.
    SquareMatrix leading_minor(const std::vector<std::size_t>& rows) const {
        SquareMatrix m(rows.size());
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = (*this)(rows[i], j);
        return m;
    }

    friend bool operator==(const SquareMatrix&, const SquareMatrix&) = default;

private:
    std::size_t n_ = 0;
    std::vector<Rational> a_;
};

inline constexpr std::size_t max_permanent_order = 12;

/// Permanent by Ryser's inclusion-exclusion formula, exact.
inline Rational permanent(const SquareMatrix& A) {
    const std::size_t n = A.order();
    if (n > max_permanent_order)
        throw InputError("permanent: order " + std::to_string(n) + " exceeds " +
                         std::to_string(max_permanent_order));
    if (n == 0) return 1;
    Rational total = 0;
    for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
        Rational prod = 1;
        for (std::size_t i = 0; i < n && prod != 0; ++i) {
            Rational row = 0;
            for (std::size_t j = 0; j < n; ++j)
                if (mask >> j & 1) row += A(i, j);
            prod *= row;
        }
        const auto bits = static_cast<std::size_t>(__builtin_popcountll(mask));
        if ((n - bits) % 2 == 0) total += prod;
        else total -= prod;
    }
    return total;
}

struct AxisSimplexMV {
    Rational per_over_dfact;
    Rational exact_mv;
    bool agree = false;
};

/// Compares Per(A)/d! with the exact mixed volume of the simplices
/// conv(0, a_i1 e_1, ..., a_id e_d). They agree when the rows are proportional;
/// for general positive A they need not (e.g. [[2,1],[1,2]] gives 5/2 vs 4).
inline AxisSimplexMV axis_simplex_mv(const SquareMatrix& A) {
    const std::size_t d = A.order();
    if (d == 0) throw InputError("axis_simplex_mv of an empty matrix");
    detail::check_dim(d);
    std::vector<Polytope> X;
    for (std::size_t i = 0; i < d; ++i) {
        std::vector<Point> pts{Point(d, Rational(0))};
        for (std::size_t j = 0; j < d; ++j) {
            if (A(i, j) <= 0) throw InputError("axis_simplex_mv needs positive entries");
            Point e(d, Rational(0));
            e[j] = A(i, j);
            pts.push_back(std::move(e));
        }
        X.push_back(convex_hull(std::move(pts), d));
    }
    AxisSimplexMV r;
    r.per_over_dfact = permanent(A) / detail::factorial(d);
    r.exact_mv = mixed_volume(X);
    r.agree = r.per_over_dfact == r.exact_mv;
    return r;
}

} // namespace symchab::polytope

#endif // SYMCHAB_POLYTOPE_HPP
