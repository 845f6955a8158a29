#ifndef SYMCHAB_LP_HPP
#define SYMCHAB_LP_HPP

#include <cstddef>
#include <vector>

#include "rational.hpp"

namespace symchab::lp {

using Row = std::vector<Rational>;
using Matrix = std::vector<Row>;

enum class Status { optimal, infeasible, unbounded };

struct Result {
    Status status = Status::infeasible;
    Rational value;           // optimum of c^T x when status == optimal
    std::vector<Rational> x;  // an optimal vertex
};

/// maximize c^T x  subject to  A_le x <= b_le,  A_eq x = b_eq,  x >= 0.
///
/// Dense two-phase simplex over exact rationals with Bland's rule, so it
/// terminates on degenerate problems. Sized for the small systems this
/// library produces (tens of rows, hundreds of columns at most).
class Problem {
public:
    explicit Problem(std::size_t num_vars) : n_(num_vars), c_(num_vars, Rational(0)) {}

    void set_objective(Row c) {
        require(c.size() == n_, "lp objective has wrong length");
        c_ = std::move(c);
    }
    void add_le(Row a, Rational b) {
        require(a.size() == n_, "lp row has wrong length");
        le_.push_back(std::move(a));
        ble_.push_back(std::move(b));
    }
    void add_eq(Row a, Rational b) {
        require(a.size() == n_, "lp row has wrong length");
        eq_.push_back(std::move(a));
        beq_.push_back(std::move(b));
    }

    std::size_t num_vars() const { return n_; }

    Result solve() const;

private:
    std::size_t n_;
    Row c_;
    Matrix le_, eq_;
    Row ble_, beq_;
};

namespace detail {

struct Tableau {
    Matrix t;                 // rows: constraints; last column is the rhs
    std::vector<std::size_t> basis;
    std::size_t cols = 0;     // number of variable columns

    void pivot(std::size_t r, std::size_t c) {
        const Rational inv = Rational(1) / t[r][c];
        for (auto& x : t[r]) x *= inv;
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (i == r || t[i][c] == 0) continue;
            const Rational f = t[i][c];
            for (std::size_t j = 0; j <= cols; ++j)
                if (t[r][j] != 0) t[i][j] -= f * t[r][j];
        }
        basis[r] = c;
    }

    // Maximizes obj over the current tableau; obj has one entry per column.
    // Columns with allowed[j] == false never enter.
    Status optimize(const Row& obj, const std::vector<bool>& allowed) {
        for (;;) {
            // reduced costs r_j = obj_j - sum_i obj_{B_i} t[i][j]
            std::size_t enter = cols;
            for (std::size_t j = 0; j < cols && enter == cols; ++j) {
                if (!allowed[j]) continue;
                Rational rj = obj[j];
                for (std::size_t i = 0; i < t.size(); ++i)
                    if (obj[basis[i]] != 0 && t[i][j] != 0) rj -= obj[basis[i]] * t[i][j];
                if (rj > 0) enter = j;
            }
            if (enter == cols) return Status::optimal;
            std::size_t leave = t.size();
            Rational best;
            for (std::size_t i = 0; i < t.size(); ++i) {
                if (t[i][enter] <= 0) continue;
                Rational ratio = t[i][cols] / t[i][enter];
                if (leave == t.size() || ratio < best ||
                    (ratio == best && basis[i] < basis[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave == t.size()) return Status::unbounded;
            pivot(leave, enter);
        }
    }
};

} // namespace detail

inline Result Problem::solve() const {
    const std::size_t mle = le_.size(), meq = eq_.size(), m = mle + meq;
    // columns: originals [0,n), slacks [n, n+mle), artificials [n+mle, n+mle+m)
    const std::size_t nslack = mle, nart = m;
    detail::Tableau tab;
    tab.cols = n_ + nslack + nart;
    tab.t.assign(m, Row(tab.cols + 1, Rational(0)));
    tab.basis.assign(m, 0);
    std::vector<bool> is_art(tab.cols, false);
    for (std::size_t i = 0; i < m; ++i) {
        const bool is_le = i < mle;
        const Row& a = is_le ? le_[i] : eq_[i - mle];
        const Rational& b = is_le ? ble_[i] : beq_[i - mle];
        const int sign = b < 0 ? -1 : 1;
        for (std::size_t j = 0; j < n_; ++j) tab.t[i][j] = sign * a[j];
        if (is_le) tab.t[i][n_ + i] = sign;
        tab.t[i][tab.cols] = sign * b;
        const std::size_t art = n_ + nslack + i;
        is_art[art] = true;
        if (is_le && sign > 0) {
            tab.basis[i] = n_ + i;
        } else {
            tab.t[i][art] = 1;
            tab.basis[i] = art;
        }
    }

    // Phase 1: maximize -(sum of artificials).
    Row obj1(tab.cols, Rational(0));
    for (std::size_t j = 0; j < tab.cols; ++j)
        if (is_art[j]) obj1[j] = -1;
    std::vector<bool> allowed(tab.cols, true);
    tab.optimize(obj1, allowed);
    for (std::size_t i = 0; i < m; ++i)
        if (is_art[tab.basis[i]] && tab.t[i][tab.cols] != 0) return Result{Status::infeasible, 0, {}};

    // Drive zero-level artificials out of the basis; drop redundant rows.
    for (std::size_t i = 0; i < tab.t.size();) {
        if (!is_art[tab.basis[i]]) {
            ++i;
            continue;
        }
        std::size_t c = tab.cols;
        for (std::size_t j = 0; j < n_ + nslack; ++j)
            if (tab.t[i][j] != 0) {
                c = j;
                break;
            }
        if (c == tab.cols) {
            tab.t.erase(tab.t.begin() + static_cast<std::ptrdiff_t>(i));
            tab.basis.erase(tab.basis.begin() + static_cast<std::ptrdiff_t>(i));
        } else {
            tab.pivot(i, c);
            ++i;
        }
    }

    // Phase 2.
    Row obj2(tab.cols, Rational(0));
    for (std::size_t j = 0; j < n_; ++j) obj2[j] = c_[j];
    for (std::size_t j = 0; j < tab.cols; ++j) allowed[j] = !is_art[j];
    if (tab.optimize(obj2, allowed) == Status::unbounded) return Result{Status::unbounded, 0, {}};

    Result res;
    res.status = Status::optimal;
    res.x.assign(n_, Rational(0));
    for (std::size_t i = 0; i < tab.t.size(); ++i)
        if (tab.basis[i] < n_) res.x[tab.basis[i]] = tab.t[i][tab.cols];
    res.value = 0;
    for (std::size_t j = 0; j < n_; ++j) res.value += c_[j] * res.x[j];
    return res;
}

/// Feasibility of { y : A y <= b } with y free (not sign constrained).
/// Free variables are split as y = y+ - y-.
inline bool free_feasible(const Matrix& A, const Row& b, std::size_t dim) {
    Problem lp(2 * dim);
    for (std::size_t i = 0; i < A.size(); ++i) {
        Row r(2 * dim);
        for (std::size_t j = 0; j < dim; ++j) {
            r[j] = A[i][j];
            r[dim + j] = -A[i][j];
        }
        lp.add_le(std::move(r), b[i]);
    }
    return lp.solve().status != Status::infeasible;
}

} // namespace symchab::lp

#endif // SYMCHAB_LP_HPP
