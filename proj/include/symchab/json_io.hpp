#ifndef SYMCHAB_JSON_IO_HPP
#define SYMCHAB_JSON_IO_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "chabauty.hpp"
#include "intersect.hpp"
#include "tropical.hpp"

namespace symchab::io {

using json = nlohmann::json;
using core::BoxDomain;
using core::ExponentVec;
using core::TailCertificate;
using core::Val;
using core::ValuedSeries;
using core::ValuedTerm;

/// One schema violation, located by a JSON pointer.
struct Violation {
    std::string path;
    std::string message;
    friend bool operator==(const Violation&, const Violation&) = default;
};

inline std::string pointer(const std::string& base, const std::string& key) { return base + "/" + key; }
inline std::string pointer(const std::string& base, std::size_t i) { return base + "/" + std::to_string(i); }

// ---------------------------------------------------------------- validation

namespace detail {

inline bool is_integer_text(const std::string& s) {
    std::size_t i = (!s.empty() && s[0] == '-') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9') return false;
    return true;
}

inline bool is_rational_text(const std::string& s) {
    const auto slash = s.find('/');
    if (slash == std::string::npos) return is_integer_text(s);
    const std::string d = s.substr(slash + 1);
    return is_integer_text(s.substr(0, slash)) && is_integer_text(d) && d.find_first_not_of("+0") != std::string::npos;
}

class Checker {
public:
    std::vector<Violation> out;

    void fail(const std::string& path, std::string msg) { out.push_back({path.empty() ? "/" : path, std::move(msg)}); }

    bool object(const json& j, const std::string& path) {
        if (j.is_object()) return true;
        fail(path, "expected an object");
        return false;
    }

    bool array(const json& j, const std::string& path, bool nonempty = false) {
        if (!j.is_array()) {
            fail(path, "expected an array");
            return false;
        }
        if (nonempty && j.empty()) {
            fail(path, "expected a nonempty array");
            return false;
        }
        return true;
    }

    /// Reports a missing required key and returns nullptr.
    const json* field(const json& obj, const std::string& key, const std::string& path, bool required = true) {
        auto it = obj.find(key);
        if (it == obj.end()) {
            if (required) fail(pointer(path, key), "missing required field");
            return nullptr;
        }
        return &*it;
    }

    void known_keys(const json& obj, const std::vector<std::string>& keys, const std::string& path) {
        for (auto it = obj.begin(); it != obj.end(); ++it)
            if (std::find(keys.begin(), keys.end(), it.key()) == keys.end()) fail(pointer(path, it.key()), "unknown field");
    }

    bool integer(const json& j, const std::string& path, std::optional<long long> lo = std::nullopt,
                 std::optional<long long> hi = std::nullopt) {
        if (!j.is_number_integer()) {
            fail(path, "expected an integer");
            return false;
        }
        const long long v = j.get<long long>();
        if (lo && v < *lo) {
            fail(path, "must be at least " + std::to_string(*lo));
            return false;
        }
        if (hi && v > *hi) {
            fail(path, "must be at most " + std::to_string(*hi));
            return false;
        }
        return true;
    }

    bool prime(const json& j, const std::string& path) {
        if (!integer(j, path, 2)) return false;
        if (!core::is_prime(j.get<long long>())) {
            fail(path, "must be a prime");
            return false;
        }
        return true;
    }

    /// An integer given as a JSON integer or a decimal string.
    bool big_integer(const json& j, const std::string& path) {
        if (j.is_number_integer() || (j.is_string() && is_integer_text(j.get<std::string>()))) return true;
        fail(path, "expected an integer or a decimal string");
        return false;
    }

    bool rational(const json& j, const std::string& path, bool nonnegative = false) {
        bool ok = false;
        if (j.is_number_integer()) ok = true;
        else if (j.is_string()) ok = is_rational_text(j.get<std::string>());
        else if (j.is_object()) {
            const json* n = field(j, "num", path);
            const json* d = field(j, "den", path);
            if (!n || !d) return false;
            known_keys(j, {"num", "den"}, path);
            if (!big_integer(*n, pointer(path, "num")) || !big_integer(*d, pointer(path, "den"))) return false;
            const bool zero = d->is_number_integer() ? d->get<long long>() == 0
                                                     : d->get<std::string>().find_first_not_of("+-0") == std::string::npos;
            if (zero) {
                fail(pointer(path, "den"), "denominator must be nonzero");
                return false;
            }
            ok = true;
        }
        if (!ok) {
            fail(path, "expected a rational (integer, \"a/b\" string or {\"num\",\"den\"})");
            return false;
        }
        if (nonnegative && parse(j) < 0) {
            fail(path, "must be nonnegative");
            return false;
        }
        return true;
    }

    static Rational parse(const json& j) {
        if (j.is_number_integer()) return Rational(j.get<long long>());
        if (j.is_string()) return parse_rational(j.get<std::string>());
        const auto text = [](const json& x) { return x.is_string() ? x.get<std::string>() : std::to_string(x.get<long long>()); };
        return parse_rational(text(j.at("num")) + "/" + text(j.at("den")));
    }

    bool point(const json& j, const std::string& path, std::optional<std::size_t> dim = std::nullopt) {
        if (!array(j, path)) return false;
        if (dim && j.size() != *dim) {
            fail(path, "expected " + std::to_string(*dim) + " coordinates");
            return false;
        }
        bool ok = true;
        for (std::size_t i = 0; i < j.size(); ++i) ok = rational(j[i], pointer(path, i)) && ok;
        return ok;
    }

    void domain(const json& j, const std::string& path, std::optional<std::size_t> dim) {
        if (!object(j, path)) return;
        known_keys(j, {"m"}, path);
        const json* m = field(j, "m", path);
        if (!m || !array(*m, pointer(path, "m"))) return;
        if (dim && m->size() != *dim) fail(pointer(path, "m"), "expected " + std::to_string(*dim) + " entries");
        for (std::size_t i = 0; i < m->size(); ++i) rational((*m)[i], pointer(pointer(path, "m"), i), true);
    }

    /// Returns the series dimension when it could be read.
    std::optional<std::size_t> series(const json& j, const std::string& path) {
        if (!object(j, path)) return std::nullopt;
        known_keys(j, {"prime", "dim", "terms", "tail", "pure"}, path);
        if (const json* p = field(j, "prime", path)) prime(*p, pointer(path, "prime"));
        std::optional<std::size_t> dim;
        if (const json* d = field(j, "dim", path))
            if (integer(*d, pointer(path, "dim"), 1, static_cast<long long>(core::max_series_dim)))
                dim = d->get<std::size_t>();
        if (const json* pure = field(j, "pure", path, false))
            if (!pure->is_boolean()) fail(pointer(path, "pure"), "expected a boolean");
        const json* terms = field(j, "terms", path);
        const std::string tp = pointer(path, "terms");
        if (terms && array(*terms, tp, true)) {
            for (std::size_t i = 0; i < terms->size(); ++i) {
                const json& t = (*terms)[i];
                const std::string ip = pointer(tp, i);
                if (!object(t, ip)) continue;
                known_keys(t, {"exp", "num", "den", "val"}, ip);
                if (const json* e = field(t, "exp", ip); e && array(*e, pointer(ip, "exp"))) {
                    if (dim && e->size() != *dim) fail(pointer(ip, "exp"), "expected " + std::to_string(*dim) + " exponents");
                    for (std::size_t k = 0; k < e->size(); ++k) integer((*e)[k], pointer(pointer(ip, "exp"), k), 0);
                }
                const bool has_num = t.contains("num"), has_val = t.contains("val");
                if (has_num == has_val) {
                    fail(ip, "a term needs exactly one of \"num\" (exact) or \"val\" (valuation only)");
                } else if (has_num) {
                    if (big_integer(t["num"], pointer(ip, "num")) && t.contains("den") &&
                        big_integer(t["den"], pointer(ip, "den"))) {
                        const auto& d = t["den"];
                        const bool zero = d.is_number_integer() ? d.get<long long>() == 0
                                                                : d.get<std::string>().find_first_not_of("+-0") == std::string::npos;
                        if (zero) fail(pointer(ip, "den"), "denominator must be nonzero");
                    }
                } else {
                    if (t.contains("den")) fail(pointer(ip, "den"), "\"den\" only goes with \"num\"");
                    rational(t["val"], pointer(ip, "val"));
                }
            }
        }
        if (const json* tail = field(j, "tail", path, false); tail && object(*tail, pointer(path, "tail"))) {
            const std::string tl = pointer(path, "tail");
            known_keys(*tail, {"kind", "k"}, tl);
            const json* kind = field(*tail, "kind", tl);
            if (kind) {
                if (!kind->is_string() || (*kind != "polynomial" && *kind != "pure")) {
                    fail(pointer(tl, "kind"), "expected \"polynomial\" or \"pure\"");
                } else if (*kind == "pure") {
                    const json* k = field(*tail, "k", tl);
                    if (k && array(*k, pointer(tl, "k"))) {
                        if (dim && k->size() != *dim) fail(pointer(tl, "k"), "expected " + std::to_string(*dim) + " entries");
                        for (std::size_t i = 0; i < k->size(); ++i) integer((*k)[i], pointer(pointer(tl, "k"), i), 1);
                    }
                } else if (tail->contains("k")) {
                    fail(pointer(tl, "k"), "a polynomial tail takes no k");
                }
            }
        }
        return dim;
    }

    std::optional<std::size_t> system(const json& j, const std::string& path) {
        if (!object(j, path)) return std::nullopt;
        known_keys(j, {"members", "domain"}, path);
        std::optional<std::size_t> dim;
        const json* members = field(j, "members", path);
        if (members && array(*members, pointer(path, "members"), true)) {
            for (std::size_t i = 0; i < members->size(); ++i) {
                auto di = series((*members)[i], pointer(pointer(path, "members"), i));
                if (di && !dim) dim = di;
            }
            if (dim && members->size() != *dim)
                fail(pointer(path, "members"), "a system needs as many members as variables");
        }
        if (const json* d = field(j, "domain", path, false)) domain(*d, pointer(path, "domain"), dim);
        return dim;
    }

    void curve(const json& j, const std::string& path) {
        if (!object(j, path)) return;
        known_keys(j, {"genus", "p", "h", "g", "rank_assumption", "assumption_A", "orders"}, path);
        if (const json* g = field(j, "genus", path)) integer(*g, pointer(path, "genus"), 1);
        if (const json* p = field(j, "p", path)) prime(*p, pointer(path, "p"));
        for (const char* key : {"h", "g"}) {
            const json* a = field(j, key, path, std::string(key) == "h");
            if (!a || !array(*a, pointer(path, key))) continue;
            for (std::size_t i = 0; i < a->size(); ++i) big_integer((*a)[i], pointer(pointer(path, key), i));
        }
        if (const json* r = field(j, "rank_assumption", path, false)) integer(*r, pointer(path, "rank_assumption"), 0);
        if (const json* a = field(j, "assumption_A", path, false))
            if (!a->is_boolean()) fail(pointer(path, "assumption_A"), "expected a boolean");
        if (const json* o = field(j, "orders", path, false); o && object(*o, pointer(path, "orders"))) {
            for (auto it = o->begin(); it != o->end(); ++it) {
                const std::string mp = pointer(pointer(path, "orders"), it.key());
                if (!array(*it, mp, true)) continue;
                for (std::size_t r = 0; r < it->size(); ++r) {
                    const auto& row = (*it)[r];
                    if (!array(row, pointer(mp, r))) continue;
                    if (row.size() != it->size()) fail(pointer(mp, r), "order matrix must be square");
                    for (std::size_t c = 0; c < row.size(); ++c) integer(row[c], pointer(pointer(mp, r), c), 1);
                }
            }
        }
    }

    void polytopes(const json& j, const std::string& path) {
        if (!object(j, path)) return;
        known_keys(j, {"polytopes", "matrix"}, path);
        const json* ps = field(j, "polytopes", path, !j.contains("matrix"));
        if (ps && array(*ps, pointer(path, "polytopes"), true)) {
            std::optional<std::size_t> dim;
            for (std::size_t i = 0; i < ps->size(); ++i) {
                const std::string pp = pointer(pointer(path, "polytopes"), i);
                if (!array((*ps)[i], pp, true)) continue;
                for (std::size_t k = 0; k < (*ps)[i].size(); ++k) {
                    const auto& pt = (*ps)[i][k];
                    if (!dim && pt.is_array()) dim = pt.size();
                    point(pt, pointer(pp, k), dim);
                }
            }
            if (dim && (*dim < 1 || *dim > polytope::max_dim))
                fail(pointer(path, "polytopes"), "points must have 1 to 4 coordinates");
            if (dim && ps->size() != *dim)
                fail(pointer(path, "polytopes"), "mixed volume needs as many polytopes as the dimension");
        }
        if (const json* m = field(j, "matrix", path, false); m && array(*m, pointer(path, "matrix"), true)) {
            for (std::size_t r = 0; r < m->size(); ++r) {
                const auto& row = (*m)[r];
                if (point(row, pointer(pointer(path, "matrix"), r), m->size()))
                    for (std::size_t c = 0; c < row.size(); ++c)
                        if (parse(row[c]) <= 0) fail(pointer(pointer(pointer(path, "matrix"), r), c), "entries must be positive");
            }
        }
    }

    void trop(const json& j, const std::string& path) {
        if (!object(j, path)) return;
        known_keys(j, {"series", "domain", "weights"}, path);
        std::optional<std::size_t> dim;
        if (const json* s = field(j, "series", path)) dim = series(*s, pointer(path, "series"));
        if (const json* d = field(j, "domain", path, false)) domain(*d, pointer(path, "domain"), dim);
        if (const json* w = field(j, "weights", path, false); w && array(*w, pointer(path, "weights")))
            for (std::size_t i = 0; i < w->size(); ++i) point((*w)[i], pointer(pointer(path, "weights"), i), dim);
    }

    void deform(const json& j, const std::string& path) {
        if (!object(j, path)) return;
        known_keys(j, {"system", "witnesses", "samples"}, path);
        std::optional<std::size_t> dim;
        if (const json* s = field(j, "system", path)) dim = system(*s, pointer(path, "system"));
        if (const json* w = field(j, "witnesses", path); w && array(*w, pointer(path, "witnesses"))) {
            if (dim && w->size() != *dim) fail(pointer(path, "witnesses"), "expected one witness list per member");
            for (std::size_t i = 0; i < w->size(); ++i) {
                const std::string wp = pointer(pointer(path, "witnesses"), i);
                if (!array((*w)[i], wp)) continue;
                for (std::size_t k = 0; k < (*w)[i].size(); ++k) point((*w)[i][k], pointer(wp, k), dim);
            }
        }
        if (const json* s = field(j, "samples", path); s && array(*s, pointer(path, "samples")))
            for (std::size_t i = 0; i < s->size(); ++i) point((*s)[i], pointer(pointer(path, "samples"), i), dim);
    }
};

} // namespace detail

inline const std::vector<std::string>& schema_ids() {
    static const std::vector<std::string> ids{"curve", "deform", "domain", "polytopes", "series", "system", "trop"};
    return ids;
}

/// Schema check of an input document; empty iff valid.
inline std::vector<Violation> validate(const json& doc, const std::string& schema) {
    detail::Checker c;
    if (schema == "series") c.series(doc, "");
    else if (schema == "system") c.system(doc, "");
    else if (schema == "curve") c.curve(doc, "");
    else if (schema == "domain") c.domain(doc, "", std::nullopt);
    else if (schema == "polytopes") c.polytopes(doc, "");
    else if (schema == "trop") c.trop(doc, "");
    else if (schema == "deform") c.deform(doc, "");
    else throw InputError("unknown schema '" + schema + "'");
    return c.out;
}

/// Throws InputError naming the first violation.
inline void require_valid(const json& doc, const std::string& schema) {
    const auto v = validate(doc, schema);
    if (!v.empty()) throw InputError(v.front().path + ": " + v.front().message);
}

// ------------------------------------------------------------------ encoding

inline json encode(const Rational& r) { return json{{"num", num(r).str()}, {"den", den(r).str()}}; }

inline Rational decode_rational(const json& j) { return detail::Checker::parse(j); }

inline json encode(const Integer& n) { return n.str(); }

inline Integer decode_integer(const json& j) {
    if (j.is_number_integer()) return Integer(j.get<long long>());
    return Integer(j.get<std::string>());
}

inline json encode(const Val& v) { return v.is_finite() ? encode(v.value()) : json("+inf"); }

inline Val decode_val(const json& j) {
    if (j.is_string() && j.get<std::string>() == "+inf") return Val::infinity();
    return Val(decode_rational(j));
}

inline json encode(const Point& p) {
    json a = json::array();
    for (const auto& x : p) a.push_back(encode(x));
    return a;
}

inline Point decode_point(const json& j) {
    Point p;
    for (const auto& x : j) p.push_back(decode_rational(x));
    return p;
}

inline json encode(const ExponentVec& u) { return u.entries(); }

inline json encode(const ValuedTerm& t) {
    json j{{"exp", encode(t.exponent)}};
    if (t.coeff_exact) {
        j["num"] = num(*t.coeff_exact).str();
        j["den"] = den(*t.coeff_exact).str();
    } else {
        j["val"] = to_string(t.coeff_val.value());
    }
    return j;
}

inline ValuedTerm decode_term(const json& j, long long p) {
    ExponentVec u(j.at("exp").get<std::vector<int>>());
    if (j.contains("num")) {
        Rational c(decode_integer(j["num"]));
        if (j.contains("den")) c /= Rational(decode_integer(j["den"]));
        return core::exact_term(std::move(u), c, p);
    }
    return core::valued_term(std::move(u), decode_rational(j.at("val")));
}

inline json encode(const ValuedSeries& f) {
    json terms = json::array();
    for (const auto& t : f.terms()) terms.push_back(encode(t));
    json tail{{"kind", f.is_polynomial() ? "polynomial" : "pure"}};
    if (!f.is_polynomial()) {
        std::vector<long long> ks;
        for (const auto& v : f.tail().vars) ks.push_back(v.k);
        tail["k"] = ks;
    }
    return json{{"prime", f.prime()}, {"dim", f.dim()}, {"terms", terms}, {"tail", tail}, {"pure", f.is_pure()}};
}

/// Checks the schema, then builds the series (semantic errors are InputErrors).
inline ValuedSeries decode_series(const json& j) {
    require_valid(j, "series");
    const long long p = j["prime"].get<long long>();
    std::vector<ValuedTerm> terms;
    for (const auto& t : j["terms"]) terms.push_back(decode_term(t, p));
    TailCertificate tail = TailCertificate::polynomial();
    bool pure = j.value("pure", false);
    if (j.contains("tail") && j["tail"]["kind"] == "pure") {
        tail = TailCertificate::pure(j["tail"]["k"].get<std::vector<long long>>());
        pure = j.value("pure", true);
    }
    return ValuedSeries(p, j["dim"].get<std::size_t>(), std::move(terms), std::move(tail), pure);
}

inline json encode(const BoxDomain& P) {
    json m = json::array();
    for (const auto& x : P.m) m.push_back(encode(x));
    return json{{"m", m}};
}

inline BoxDomain decode_domain(const json& j) {
    BoxDomain P;
    for (const auto& x : j.at("m")) P.m.push_back(decode_rational(x));
    P.validate();
    return P;
}

inline json encode(const intersect::SeriesSystem& S) {
    json members = json::array();
    for (const auto& f : S.members()) members.push_back(encode(f));
    return json{{"members", members}, {"domain", encode(S.domain())}};
}

inline intersect::SeriesSystem decode_system(const json& j) {
    require_valid(j, "system");
    std::vector<ValuedSeries> members;
    for (std::size_t i = 0; i < j["members"].size(); ++i) {
        try {
            members.push_back(decode_series(j["members"][i]));
        } catch (const InputError& e) {
            throw InputError("/members/" + std::to_string(i) + ": " + e.what());
        }
    }
    if (j.contains("domain")) return intersect::SeriesSystem(std::move(members), decode_domain(j["domain"]));
    return intersect::SeriesSystem(std::move(members));
}

inline json encode(const polytope::Polytope& P) {
    json v = json::array();
    for (const auto& x : P.vertices()) v.push_back(encode(x));
    return json{{"dim", P.dim()}, {"vertices", v}};
}

inline polytope::Polytope decode_polytope(const json& j) {
    std::vector<Point> pts;
    for (const auto& x : j.at("vertices")) pts.push_back(decode_point(x));
    return polytope::convex_hull(std::move(pts), j.at("dim").get<std::size_t>());
}

inline json encode(const core::LinearConstraint& c) { return json{{"a", encode(c.a)}, {"b", encode(c.b)}}; }

inline core::LinearConstraint decode_constraint(const json& j) {
    return {decode_point(j.at("a")), decode_rational(j.at("b"))};
}

inline json encode(const core::TropCell& c) {
    json tie = json::array(), eq = json::array(), le = json::array();
    for (const auto& u : c.tie) tie.push_back(encode(u));
    for (const auto& x : c.equalities) eq.push_back(encode(x));
    for (const auto& x : c.inequalities) le.push_back(encode(x));
    return json{{"tie", tie},
                {"equalities", eq},
                {"inequalities", le},
                {"relative_interior", encode(c.relative_interior)},
                {"dimension", c.dimension}};
}

inline core::TropCell decode_cell(const json& j) {
    core::TropCell c;
    for (const auto& u : j.at("tie")) c.tie.emplace_back(u.get<std::vector<int>>());
    for (const auto& x : j.at("equalities")) c.equalities.push_back(decode_constraint(x));
    for (const auto& x : j.at("inequalities")) c.inequalities.push_back(decode_constraint(x));
    c.relative_interior = decode_point(j.at("relative_interior"));
    c.dimension = j.at("dimension").get<int>();
    return c;
}

inline json encode(const intersect::StableCount& s) {
    json strata = json::array();
    for (const auto& [T, n] : s.strata) strata.push_back(json{{"coordinates", T}, {"bound", encode(n)}});
    return json{{"interior", encode(s.interior)}, {"strata", strata}, {"total", encode(s.total)}};
}

inline intersect::StableCount decode_stable_count(const json& j) {
    intersect::StableCount s;
    s.interior = decode_rational(j.at("interior"));
    s.total = decode_rational(j.at("total"));
    for (const auto& x : j.at("strata"))
        s.strata[x.at("coordinates").get<std::vector<std::size_t>>()] = decode_rational(x.at("bound"));
    return s;
}

inline json encode(const intersect::DeformationReport& R) {
    json perts = json::array();
    for (const auto& p : R.perturbations)
        perts.push_back(json{{"h", p.h ? encode(*p.h) : json(nullptr)}, {"eps_val", encode(p.eps_val)}});
    json wit = json::array(), samples = json::array();
    for (const auto& ws : R.witnesses) {
        json a = json::array();
        for (const auto& w : ws) a.push_back(encode(w));
        wit.push_back(a);
    }
    for (const auto& w : R.samples) samples.push_back(encode(w));
    return json{{"deformed", encode(R.deformed)},
                {"perturbations", perts},
                {"witnesses", wit},
                {"samples", samples},
                {"trop_preserved", R.trop_preserved},
                {"gamma_preserved", R.gamma_preserved}};
}

inline intersect::DeformationReport decode_deformation(const json& j) {
    intersect::DeformationReport R{decode_system(j.at("deformed")), {}, {}, {}, false, false};
    for (const auto& p : j.at("perturbations")) {
        intersect::Perturbation x;
        if (!p.at("h").is_null()) x.h = decode_series(p["h"]);
        x.eps_val = decode_val(p.at("eps_val"));
        R.perturbations.push_back(std::move(x));
    }
    for (const auto& ws : j.at("witnesses")) {
        std::vector<Point> a;
        for (const auto& w : ws) a.push_back(decode_point(w));
        R.witnesses.push_back(std::move(a));
    }
    for (const auto& w : j.at("samples")) R.samples.push_back(decode_point(w));
    R.trop_preserved = j.at("trop_preserved").get<bool>();
    R.gamma_preserved = j.at("gamma_preserved").get<bool>();
    return R;
}

// ------------------------------------------------------------------ curves

inline json encode(const chabauty::CurveSpec& C) {
    json h = json::array(), g = json::array();
    for (const auto& c : C.h) h.push_back(encode(c));
    for (const auto& c : C.g) g.push_back(encode(c));
    json j{{"genus", C.genus}, {"p", C.p}, {"h", h}, {"g", g}, {"assumption_A", C.assumption_A}};
    if (C.rank_assumption) j["rank_assumption"] = *C.rank_assumption;
    return j;
}

inline chabauty::CurveSpec decode_curve(const json& j) {
    require_valid(j, "curve");
    chabauty::CurveSpec C;
    C.genus = j["genus"].get<int>();
    C.p = j["p"].get<long long>();
    for (const auto& c : j["h"]) C.h.push_back(decode_integer(c));
    if (j.contains("g"))
        for (const auto& c : j["g"]) C.g.push_back(decode_integer(c));
    if (j.contains("rank_assumption")) C.rank_assumption = j["rank_assumption"].get<long long>();
    C.assumption_A = j.value("assumption_A", false);
    C.validate();
    return C;
}

inline std::map<std::string, std::vector<std::vector<long long>>> decode_orders(const json& curve_doc) {
    std::map<std::string, std::vector<std::vector<long long>>> out;
    if (curve_doc.contains("orders"))
        for (auto it = curve_doc["orders"].begin(); it != curve_doc["orders"].end(); ++it)
            out[it.key()] = it->get<std::vector<std::vector<long long>>>();
    return out;
}

inline json encode(const chabauty::CurvePoint& P) {
    if (P.at_infinity) return json{{"infinity", true}};
    return json{{"x", P.x}, {"y", P.y}};
}

inline chabauty::CurvePoint decode_curve_point(const json& j) {
    if (j.value("infinity", false)) return chabauty::CurvePoint::infinity();
    return {false, j.at("x").get<std::uint32_t>(), j.at("y").get<std::uint32_t>()};
}

inline json encode(const chabauty::ClosedPoint& P) {
    return json{{"degree", P.degree}, {"representative", encode(P.representative)}, {"key", P.key()}};
}

inline chabauty::ClosedPoint decode_closed_point(const json& j) {
    return {j.at("degree").get<int>(), decode_curve_point(j.at("representative"))};
}

inline json encode(const chabauty::ResidueDiskProfile& P) {
    json parts = json::array();
    for (const auto& [pt, m] : P.parts) parts.push_back(json{{"point", encode(pt)}, {"multiplicity", m}});
    return json{{"key", P.key()}, {"parts", parts}, {"n_p", P.n_p()}, {"degree", P.degree()}};
}

inline chabauty::ResidueDiskProfile decode_profile(const json& j) {
    chabauty::ResidueDiskProfile P;
    for (const auto& x : j.at("parts"))
        P.parts.push_back({decode_closed_point(x.at("point")), x.at("multiplicity").get<int>()});
    return P;
}

inline json encode(const chabauty::DiskMatrix& M) {
    json a = json::array(), prov = json::array();
    for (std::size_t i = 0; i < M.A.order(); ++i) {
        json row = json::array(), prow = json::array();
        for (std::size_t k = 0; k < M.A.order(); ++k) {
            row.push_back(encode(M.A(i, k)));
            const auto& e = M.provenance[i][k];
            prow.push_back(json{{"k", e.k}, {"delta", e.delta}, {"l", e.ell}});
        }
        a.push_back(row);
        prov.push_back(prow);
    }
    return json{{"A", a}, {"provenance", prov}};
}

inline chabauty::DiskMatrix decode_disk_matrix(const json& j) {
    const auto& a = j.at("A");
    chabauty::DiskMatrix M{polytope::SquareMatrix(a.size()), {}};
    for (std::size_t i = 0; i < a.size(); ++i) {
        M.provenance.emplace_back();
        for (std::size_t k = 0; k < a.size(); ++k) {
            M.A(i, k) = decode_rational(a[i][k]);
            const auto& e = j.at("provenance")[i][k];
            M.provenance.back().push_back({e.at("k").get<long long>(), e.at("delta").get<long long>(), e.at("l").get<long long>()});
        }
    }
    return M;
}

inline std::string to_string(chabauty::DeltaMode m) { return m == chabauty::DeltaMode::strict ? "strict" : "dimension"; }

inline json encode(const chabauty::BoundReport& R) {
    json rows = json::array();
    for (const auto& r : R.rows) {
        rows.push_back(json{{"key", r.key},
                            {"profile", r.profile ? encode(*r.profile) : json(nullptr)},
                            {"matrix", encode(r.matrix)},
                            {"per", encode(r.per)},
                            {"per_prime", encode(r.per_prime)},
                            {"n_p", r.n_p},
                            {"disks", encode(r.disks)},
                            {"contribution", encode(r.contribution)},
                            {"conservative_contribution", encode(r.conservative_contribution)}});
    }
    json assumptions{{"genus", R.genus}, {"p", R.p}, {"d", R.d}, {"assumption_A", R.assumption_A},
                     {"rank_assumption", R.rank_assumption ? json(*R.rank_assumption) : json(nullptr)},
                     {"label", R.label()}};
    return json{{"assumptions", assumptions},
                {"worst_case", R.worst_case},
                {"delta_mode", to_string(R.delta_mode)},
                {"disk_count_source", chabauty::to_string(R.source)},
                {"disk_count", encode(R.disk_count)},
                {"rows", rows},
                {"total", encode(R.total)},
                {"conservative_total", encode(R.conservative_total)}};
}

inline chabauty::BoundReport decode_bound_report(const json& j) {
    chabauty::BoundReport R;
    const auto& a = j.at("assumptions");
    R.genus = a.at("genus").get<long long>();
    R.p = a.at("p").get<long long>();
    R.d = a.at("d").get<long long>();
    R.assumption_A = a.at("assumption_A").get<bool>();
    if (!a.at("rank_assumption").is_null()) R.rank_assumption = a["rank_assumption"].get<long long>();
    R.worst_case = j.at("worst_case").get<bool>();
    R.delta_mode = j.at("delta_mode") == "strict" ? chabauty::DeltaMode::strict : chabauty::DeltaMode::dimension;
    const auto src = j.at("disk_count_source").get<std::string>();
    R.source = src == "hasse-weil"  ? chabauty::DiskCountSource::hasse_weil
               : src == "user-cap" ? chabauty::DiskCountSource::user_cap
                                    : chabauty::DiskCountSource::enumerated;
    R.disk_count = decode_integer(j.at("disk_count"));
    for (const auto& r : j.at("rows")) {
        chabauty::DiskRow row;
        row.key = r.at("key").get<std::string>();
        if (!r.at("profile").is_null()) row.profile = decode_profile(r["profile"]);
        row.matrix = decode_disk_matrix(r.at("matrix"));
        row.per = decode_rational(r.at("per"));
        row.per_prime = decode_rational(r.at("per_prime"));
        row.n_p = r.at("n_p").get<long long>();
        row.disks = decode_integer(r.at("disks"));
        row.contribution = decode_rational(r.at("contribution"));
        row.conservative_contribution = decode_rational(r.at("conservative_contribution"));
        R.rows.push_back(std::move(row));
    }
    R.total = decode_rational(j.at("total"));
    R.conservative_total = decode_rational(j.at("conservative_total"));
    return R;
}

} // namespace symchab::io

#endif // SYMCHAB_JSON_IO_HPP
