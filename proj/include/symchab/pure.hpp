#ifndef SYMCHAB_PURE_HPP
#define SYMCHAB_PURE_HPP

#include <cstddef>
#include <vector>

#include "series.hpp"

namespace symchab::core {

/// Term-wise antiderivative with zero constant term of a stored one-variable
/// integral series omega. The certificate's k is 1 + the order of the
/// reduction of omega, read off the stored terms.
inline ValuedSeries antiderivative(const ValuedSeries& omega) {
    if (omega.dim() != 1) throw InputError("antiderivative needs a one-variable series");
    const long long p = omega.prime();
    long long k = 0;
    std::vector<ValuedTerm> out;
    for (const auto& t : omega.terms()) {
        if (t.coeff_val < Val(0)) throw InputError("antiderivative needs integral coefficients");
        const int i = t.exponent[0];
        if (k == 0 && t.coeff_val == Val(0)) k = i + 1;
        const Integer n = i + 1;
        ExponentVec u{i + 1};
        if (t.coeff_exact)
            out.push_back(exact_term(u, *t.coeff_exact / Rational(n), p));
        else
            out.push_back(valued_term(u, t.coeff_val.value() - ord_p(n, p)));
    }
    if (k == 0) throw InputError("the reduction of the stored differential vanishes");
    return ValuedSeries(p, 1, std::move(out), TailCertificate::pure({k}), true);
}

/// f_1(t_1) + ... + f_d(t_d) + C with v(C) = constant_val (omitted when +inf).
inline ValuedSeries assemble_pure(const std::vector<ValuedSeries>& parts, const Val& constant_val) {
    if (parts.empty()) throw InputError("assemble_pure needs at least one part");
    const long long p = parts.front().prime();
    const std::size_t d = parts.size();
    const bool pure_tail = !parts.front().is_polynomial();
    std::vector<ValuedTerm> terms;
    std::vector<long long> ks;
    if (constant_val.is_finite()) terms.push_back(valued_term(ExponentVec(std::vector<int>(d, 0)), constant_val.value()));
    for (std::size_t i = 0; i < d; ++i) {
        const auto& f = parts[i];
        if (f.prime() != p) throw InputError("assemble_pure: prime mismatch");
        if (f.dim() != 1) throw InputError("assemble_pure: parts must be one-variable series");
        if (f.is_polynomial() == pure_tail) throw InputError("assemble_pure: parts mix tail kinds");
        if (pure_tail) ks.push_back(f.tail().vars[0].k);
        for (const auto& t : f.terms()) {
            if (t.exponent[0] == 0) throw InputError("assemble_pure: parts must have no constant term");
            terms.push_back({ExponentVec::axis(d, i, t.exponent[0]), t.coeff_val, t.coeff_exact});
        }
    }
    auto tail = pure_tail ? TailCertificate::pure(ks) : TailCertificate::polynomial();
    return ValuedSeries(p, d, std::move(terms), std::move(tail), true);
}

/// Degree after which terms of a part with certificate k are dropped.
inline long long truncation_cutoff(long long k, long long p, long long ell) {
    if (ell < 1) throw InputError("truncation needs l >= 1");
    return k + truncation_depth(k, p, Rational(1, ell));
}

/// Drops every t_i^n with n > k_i + delta(k_i, p, l).
///
/// Terms past the cutoff cannot reach a vert set at weights with every
/// w_i >= 1/l, so P must lie inside [1/l, inf)^d. The result is a polynomial
/// with the same vert_domain over P.
inline ValuedSeries truncate_pure(const ValuedSeries& F, const BoxDomain& P, long long ell) {
    if (!F.is_pure() || F.is_polynomial()) throw InputError("truncate_pure needs a pure series with a tail certificate");
    if (P.dim() != F.dim()) throw InputError("domain dimension does not match the series");
    const Rational slope(1, ell < 1 ? 1 : ell);
    for (const auto& m : P.m)
        if (m < slope) throw InputError("truncate_pure: the domain must lie in [1/l, inf)^d");
    std::vector<long long> cut(F.dim());
    for (std::size_t i = 0; i < F.dim(); ++i) {
        cut[i] = truncation_cutoff(F.tail().vars[i].k, F.prime(), ell);
        if (F.stored_degree(i) < cut[i])
            throw InputError("stored support of variable " + std::to_string(i + 1) + " ends before the cutoff " +
                             std::to_string(cut[i]));
    }
    std::vector<ValuedTerm> kept;
    for (const auto& t : F.terms()) {
        bool keep = true;
        for (std::size_t i = 0; i < F.dim(); ++i)
            if (t.exponent[i] > cut[i]) keep = false;
        if (keep) kept.push_back(t);
    }
    return ValuedSeries(F.prime(), F.dim(), std::move(kept), TailCertificate::polynomial(), true);
}

} // namespace symchab::core

#endif // SYMCHAB_PURE_HPP
