#ifndef SYMCHAB_CHABAUTY_HPP
#define SYMCHAB_CHABAUTY_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/integer.hpp>

#include "curve.hpp"
#include "polytope.hpp"
#include "valuation.hpp"

namespace symchab::chabauty {

using polytope::SquareMatrix;

/// max{N >= 0 : v_p(k+N) >= N/l + v_p(k)}, the epsilon -> 0 limit of the
/// truncation depth on [epsilon, inf)^l.
inline long long delta(long long k, long long p, long long ell) {
    if (k < 1) throw InputError("delta needs k >= 1");
    if (ell < 1) throw InputError("delta needs l >= 1");
    return core::truncation_depth(k, p, Rational(1, ell));
}

/// floor((1 + 2g p^{d/2} + p^d)^d).
inline Integer sym_count_bound(long long g, long long p, long long d) {
    if (g < 0 || d < 0) throw InputError("sym_count_bound needs g, d >= 0");
    core::require_prime(p);
    if (d == 0) return 1;
    Integer pd = boost::multiprecision::pow(Integer(p), static_cast<unsigned>(d));
    if (d % 2 == 0) {
        Integer base = 1 + 2 * Integer(g) * boost::multiprecision::pow(Integer(p), static_cast<unsigned>(d / 2)) + pd;
        return boost::multiprecision::pow(base, static_cast<unsigned>(d));
    }
    // (A + B sqrt p)^d = C + D sqrt p with integers C, D >= 0.
    const Integer A = 1 + pd;
    const Integer B = 2 * Integer(g) * boost::multiprecision::pow(Integer(p), static_cast<unsigned>(d / 2));
    Integer C = 1, D = 0;
    for (long long i = 0; i < d; ++i) {
        Integer c = C * A + D * B * p;
        Integer e = C * B + D * A;
        C = std::move(c);
        D = std::move(e);
    }
    return C + boost::multiprecision::sqrt(Integer(D * D * p));
}

/// A multiset of closed points of total degree d: one residue disk of Sym^d.
struct ResidueDiskProfile {
    std::vector<std::pair<ClosedPoint, int>> parts; // sorted by point, multiplicities >= 1

    int degree() const {
        int s = 0;
        for (const auto& [P, m] : parts) s += P.degree * m;
        return s;
    }

    /// prod of s_j!
    long long n_p() const {
        long long n = 1;
        for (const auto& [P, m] : parts)
            for (int i = 2; i <= m; ++i) n *= i;
        return n;
    }

    /// Canonical text key, e.g. "1:inf*2" or "1:0,0+2:3,1".
    std::string key() const {
        std::string s;
        for (const auto& [P, m] : parts) {
            if (!s.empty()) s += "+";
            s += P.key();
            if (m > 1) s += "*" + std::to_string(m);
        }
        return s;
    }

    friend bool operator==(const ResidueDiskProfile&, const ResidueDiskProfile&) = default;
};

/// Every multiset of the given closed points with sum e_j s_j = d, in
/// lexicographic order of the point list.
inline std::vector<ResidueDiskProfile> profiles_from(const std::vector<ClosedPoint>& pts, int d) {
    std::vector<ResidueDiskProfile> out;
    ResidueDiskProfile cur;
    auto rec = [&](auto&& self, std::size_t i, int left) -> void {
        if (left == 0) {
            out.push_back(cur);
            return;
        }
        if (i == pts.size()) return;
        for (int m = left / pts[i].degree; m >= 1; --m) {
            cur.parts.push_back({pts[i], m});
            self(self, i + 1, left - m * pts[i].degree);
            cur.parts.pop_back();
        }
        self(self, i + 1, left);
    };
    rec(rec, 0, d);
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.key() < b.key(); });
    return out;
}

/// The residue disks of (Sym^d X)(F_p).
inline std::vector<ResidueDiskProfile> sym_profiles(const CurveSpec& C, int d) {
    if (d < 1) throw InputError("sym_profiles needs d >= 1");
    return profiles_from(closed_points(C, d).points, d);
}

/// Coefficient of t^d in prod_e (1 - t^e)^{-a_e}; counts[e-1] = a_e.
inline long long sym_count_from_counts(const std::vector<long long>& counts, int d) {
    std::vector<long long> series(d + 1, 0);
    series[0] = 1;
    for (int e = 1; e <= static_cast<int>(counts.size()) && e <= d; ++e)
        for (long long r = 0; r < counts[e - 1]; ++r)
            for (int n = e; n <= d; ++n) series[n] += series[n - e];
    return series[d];
}

/// How the l argument of delta is chosen for row i.
enum class DeltaMode {
    dimension, // l = d for every entry
    strict,    // l = multiplicity of the part owning row i
};

struct DiskEntry {
    long long k = 1;
    long long delta = 0;
    long long ell = 1;
    friend bool operator==(const DiskEntry&, const DiskEntry&) = default;
};

struct DiskMatrix {
    SquareMatrix A;
    std::vector<std::vector<DiskEntry>> provenance;
    friend bool operator==(const DiskMatrix&, const DiskMatrix&) = default;
};

/// Multiplicity of the profile part that owns each of the d coordinates:
/// a part of degree e and multiplicity s owns e*s consecutive coordinates.
inline std::vector<long long> row_multiplicities(const ResidueDiskProfile& P) {
    std::vector<long long> out;
    for (const auto& [pt, m] : P.parts)
        for (int i = 0; i < pt.degree * m; ++i) out.push_back(m);
    return out;
}

/// a_ij = k_ij + delta(k_ij, p, l_i).
inline DiskMatrix disk_matrix(const std::vector<std::vector<long long>>& orders, long long p,
                              const std::vector<long long>& ells) {
    const std::size_t d = orders.size();
    if (d == 0) throw InputError("order matrix is empty");
    if (ells.size() != d) throw InputError("order matrix has " + std::to_string(d) + " rows but the disk has " +
                                           std::to_string(ells.size()) + " coordinates");
    DiskMatrix M{SquareMatrix(d), {}};
    for (std::size_t i = 0; i < d; ++i) {
        if (orders[i].size() != d) throw InputError("order matrix must be square");
        M.provenance.emplace_back();
        for (std::size_t j = 0; j < d; ++j) {
            const long long k = orders[i][j];
            if (k < 1) throw InputError("orders must satisfy k >= 1");
            const long long dl = delta(k, p, ells[i]);
            M.A(i, j) = Rational(k + dl);
            M.provenance.back().push_back({k, dl, ells[i]});
        }
    }
    return M;
}

inline DiskMatrix disk_matrix(const std::vector<std::vector<long long>>& orders, long long p) {
    return disk_matrix(orders, p, std::vector<long long>(orders.size(), static_cast<long long>(orders.size())));
}

/// The k in {1, ..., 2g-1} maximizing k + delta(k, p, l); smallest on ties.
inline DiskEntry worst_case_entry(long long p, long long g, long long ell) {
    if (g < 1) throw InputError("genus must be at least 1");
    DiskEntry best{1, delta(1, p, ell), ell};
    for (long long k = 2; k <= 2 * g - 1; ++k) {
        const long long dl = delta(k, p, ell);
        if (k + dl > best.k + best.delta) best = {k, dl, ell};
    }
    return best;
}

inline DiskMatrix worst_case_disk_matrix(long long p, long long d, long long g,
                                         std::optional<std::vector<long long>> ells = std::nullopt) {
    if (d < 1) throw InputError("d must be at least 1");
    std::vector<long long> L = ells ? *ells : std::vector<long long>(d, d);
    if (static_cast<long long>(L.size()) != d) throw InputError("row multiplicities do not match d");
    DiskMatrix M{SquareMatrix(static_cast<std::size_t>(d)), {}};
    for (long long i = 0; i < d; ++i) {
        const DiskEntry e = worst_case_entry(p, g, L[i]);
        M.provenance.emplace_back(static_cast<std::size_t>(d), e);
        for (long long j = 0; j < d; ++j) M.A(i, j) = Rational(e.k + e.delta);
    }
    return M;
}

inline constexpr std::size_t max_per_prime_order = 4;

/// Per(A)' = sum_i 1/i! sum over i-row subsets of Per(rows, first i columns).
inline Rational per_prime(const SquareMatrix& A) {
    const std::size_t d = A.order();
    if (d > max_per_prime_order) throw InputError("per_prime supports order at most 4");
    Rational total = 1;
    for (std::size_t i = 1; i <= d; ++i) {
        Rational s = 0;
        for (unsigned mask = 0; mask < (1u << d); ++mask) {
            if (static_cast<std::size_t>(__builtin_popcount(mask)) != i) continue;
            std::vector<std::size_t> rows;
            for (std::size_t row = 0; row < d; ++row)
                if (mask & (1u << row)) rows.push_back(row);
            s += polytope::permanent(A.leading_minor(rows));
        }
        total += s / polytope::detail::factorial(i);
    }
    return total;
}

enum class DiskCountSource { enumerated, hasse_weil, user_cap };

inline std::string to_string(DiskCountSource s) {
    switch (s) {
    case DiskCountSource::enumerated: return "enumerated";
    case DiskCountSource::hasse_weil: return "hasse-weil";
    case DiskCountSource::user_cap: return "user-cap";
    }
    return "";
}

struct DiskRow {
    std::string key;                            // profile key, or "worst-case"
    std::optional<ResidueDiskProfile> profile;  // absent in worst-case mode
    DiskMatrix matrix;
    Rational per;
    Rational per_prime;
    long long n_p = 1;
    Integer disks = 1; // number of disks this row stands for
    Rational contribution;
    Rational conservative_contribution;

    friend bool operator==(const DiskRow&, const DiskRow&) = default;
};

struct BoundReport {
    long long genus = 0;
    long long p = 2;
    long long d = 1;
    std::optional<long long> rank_assumption;
    bool assumption_A = false;
    bool worst_case = false;
    DeltaMode delta_mode = DeltaMode::dimension;
    DiskCountSource source = DiskCountSource::enumerated;
    Integer disk_count = 0;
    std::vector<DiskRow> rows;
    Rational total;
    Rational conservative_total;

    friend bool operator==(const BoundReport&, const BoundReport&) = default;

    /// "conditional" when rank <= g - d and the analytic assumption are both asserted.
    std::string label() const {
        const bool ok = rank_assumption && *rank_assumption <= genus - d && assumption_A;
        return ok ? "conditional" : "arithmetic only";
    }
};

namespace detail {

inline DiskRow make_row(std::string key, std::optional<ResidueDiskProfile> profile, DiskMatrix M, long long n_p,
                        Integer disks) {
    DiskRow r;
    r.key = std::move(key);
    r.profile = std::move(profile);
    r.per = polytope::permanent(M.A);
    r.per_prime = per_prime(M.A);
    r.matrix = std::move(M);
    r.n_p = n_p;
    r.disks = disks;
    r.contribution = r.per_prime * Rational(disks) / n_p;
    r.conservative_contribution = r.per_prime * Rational(disks);
    return r;
}

inline void finish(BoundReport& R) {
    R.total = 0;
    R.conservative_total = 0;
    for (const auto& r : R.rows) {
        R.total += r.contribution;
        R.conservative_total += r.conservative_contribution;
    }
}

} // namespace detail

/// Worst-case bound: every disk gets the worst-case matrix and N_P := 1. The
/// disk count is the user cap if given, else the Hasse-Weil style count.
inline BoundReport worst_case_bound(long long p, long long d, long long g, std::optional<Integer> disk_cap = std::nullopt,
                                    std::optional<long long> rank_assumption = std::nullopt, bool assumption_A = false) {
    core::require_prime(p);
    if (d < 1 || static_cast<std::size_t>(d) > max_per_prime_order) throw InputError("d must lie in 1..4");
    if (g < 1) throw InputError("genus must be at least 1");
    if (disk_cap && *disk_cap < 0) throw InputError("disk cap must be nonnegative");
    BoundReport R;
    R.genus = g;
    R.p = p;
    R.d = d;
    R.rank_assumption = rank_assumption;
    R.assumption_A = assumption_A;
    R.worst_case = true;
    R.source = disk_cap ? DiskCountSource::user_cap : DiskCountSource::hasse_weil;
    R.disk_count = disk_cap ? *disk_cap : sym_count_bound(g, p, d);
    R.rows.push_back(detail::make_row("worst-case", std::nullopt, worst_case_disk_matrix(p, d, g), 1, R.disk_count));
    detail::finish(R);
    return R;
}

struct CurveBoundOptions {
    int d = 1;
    bool worst_case = false;
    DeltaMode delta_mode = DeltaMode::dimension;
    std::map<std::string, std::vector<std::vector<long long>>> orders; // by profile key
};

/// Sum over the enumerated residue disks of (1/N_P) Per(A_P)'.
inline BoundReport curve_bound(const CurveSpec& C, const CurveBoundOptions& opt) {
    C.validate();
    if (opt.d < 1 || static_cast<std::size_t>(opt.d) > max_per_prime_order) throw InputError("d must lie in 1..4");
    if (opt.worst_case && !opt.orders.empty())
        throw InputError("worst-case mode and explicit orders are mutually exclusive");
    const auto profiles = sym_profiles(C, opt.d);
    if (!opt.worst_case) {
        for (const auto& [key, m] : opt.orders) {
            (void)m;
            if (std::none_of(profiles.begin(), profiles.end(), [&](const auto& P) { return P.key() == key; }))
                throw InputError("orders given for unknown profile " + key);
        }
    }
    BoundReport R;
    R.genus = C.genus;
    R.p = C.p;
    R.d = opt.d;
    R.rank_assumption = C.rank_assumption;
    R.assumption_A = C.assumption_A;
    R.worst_case = opt.worst_case;
    R.delta_mode = opt.delta_mode;
    R.source = DiskCountSource::enumerated;
    R.disk_count = static_cast<long long>(profiles.size());
    for (const auto& P : profiles) {
        std::vector<long long> ells = opt.delta_mode == DeltaMode::strict
                                          ? row_multiplicities(P)
                                          : std::vector<long long>(opt.d, opt.d);
        DiskMatrix M;
        if (opt.worst_case) {
            M = worst_case_disk_matrix(C.p, opt.d, C.genus, ells);
        } else {
            auto it = opt.orders.find(P.key());
            if (it == opt.orders.end()) throw InputError("no orders given for profile " + P.key() + " (supply \"orders\" or use the worst case)");
            M = disk_matrix(it->second, C.p, ells);
        }
        R.rows.push_back(detail::make_row(P.key(), P, std::move(M), P.n_p(), 1));
    }
    detail::finish(R);
    return R;
}

} // namespace symchab::chabauty

#endif // SYMCHAB_CHABAUTY_HPP
