#ifndef SYMCHAB_CLI_HPP
#define SYMCHAB_CLI_HPP

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "json_io.hpp"

namespace symchab::cli {

using io::json;

inline constexpr int exit_ok = 0;
inline constexpr int exit_input = 2;
inline constexpr int exit_computation = 3;

inline constexpr int default_max_e = 8;

/// SYMCHAB_MAX_E, or the default when unset.
inline int max_field_degree() {
    const char* env = std::getenv("SYMCHAB_MAX_E");
    if (!env || !*env) return default_max_e;
    const std::string s(env);
    if (!io::detail::is_integer_text(s) || s[0] == '-' || s.size() > 3)
        throw InputError("SYMCHAB_MAX_E must be a positive integer, got '" + s + "'");
    const int e = std::stoi(s);
    if (e < 1) throw InputError("SYMCHAB_MAX_E must be a positive integer");
    return std::min(e, chabauty::max_count_degree);
}

namespace detail {

struct Source {
    std::string path;
    std::string inline_json;
};

inline json read_input(const Source& src) {
    std::string text;
    if (!src.inline_json.empty()) {
        text = src.inline_json;
    } else if (src.path == "-") {
        std::stringstream ss;
        ss << std::cin.rdbuf();
        text = ss.str();
    } else if (!src.path.empty()) {
        std::ifstream in(src.path);
        if (!in) throw InputError("cannot read input file '" + src.path + "'");
        std::stringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    } else {
        throw InputError("this subcommand needs --input FILE or --json TEXT");
    }
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("invalid JSON: ") + e.what());
    }
}

inline std::string rat(const Rational& r) { return to_string(r); }

inline std::string point_str(const Point& w) {
    std::string s = "(";
    for (std::size_t i = 0; i < w.size(); ++i) s += (i ? ", " : "") + rat(w[i]);
    return s + ")";
}

inline std::string term_str(const core::ValuedTerm& t) {
    std::string s = t.exponent.str() + "  v=" + t.coeff_val.str();
    if (t.coeff_exact) s += "  c=" + rat(*t.coeff_exact);
    return s;
}

inline std::string pad(std::string s, std::size_t n) {
    if (s.size() < n) s.insert(0, n - s.size(), ' ');
    return s;
}

} // namespace detail

/// Parses args (without the program name), runs one subcommand, writes the
/// report to out and diagnostics to err; returns the exit status.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Effective Chabauty bounds for symmetric powers of curves, with the tropical and mixed-volume tools behind them.", "symchab"};
    app.require_subcommand(1);
    std::string format = "text";
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));

    detail::Source src;
    auto add_input = [&](CLI::App* sub) {
        auto* a = sub->add_option("-i,--input", src.path, "Input JSON file ('-' for stdin)");
        auto* b = sub->add_option("--json", src.inline_json, "Inline input JSON");
        a->excludes(b);
        sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
    };

    // delta-table
    long long dt_p = 2, dt_l = 2, dt_kmin = 1, dt_kmax = 4;
    auto* delta_cmd = app.add_subcommand("delta-table", "Truncation depths delta(k, p, l)");
    delta_cmd->add_option("--p", dt_p, "Prime")->required();
    delta_cmd->add_option("--l", dt_l, "Number of disk coordinates l")->required()->check(CLI::PositiveNumber);
    delta_cmd->add_option("--k-min", dt_kmin, "First k")->check(CLI::PositiveNumber);
    delta_cmd->add_option("--k-max", dt_kmax, "Last k")->check(CLI::PositiveNumber);
    delta_cmd->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));

    auto* trop_cmd = app.add_subcommand("trop", "Vert sets, tropical cells and membership of one series");
    add_input(trop_cmd);

    auto* mv_cmd = app.add_subcommand("mixedvol", "Mixed volume of d polytopes in R^d");
    add_input(mv_cmd);

    std::string method = "mv";
    auto* bern_cmd = app.add_subcommand("bernstein", "Bernstein bound and stable count of a series system");
    add_input(bern_cmd);
    bern_cmd->add_option("--method", method, "Counting method")->check(CLI::IsMember({"mv", "permanent"}));

    auto* deform_cmd = app.add_subcommand("deform", "Deform a system while keeping its tropical data");
    add_input(deform_cmd);

    int e_max = 1;
    auto* count_cmd = app.add_subcommand("count-points", "Point counts and closed points of a curve over F_{p^e}");
    add_input(count_cmd);
    count_cmd->add_option("--e", e_max, "Largest extension degree")->check(CLI::PositiveNumber);

    int sym_d = 2;
    auto* sym_cmd = app.add_subcommand("sym-profiles", "Residue disks of Sym^d of a curve");
    add_input(sym_cmd);
    sym_cmd->add_option("--d", sym_d, "Symmetric power")->check(CLI::PositiveNumber);

    bool worst = false, strict = false, assume_a = false;
    std::optional<long long> b_p, b_d, b_g, b_rank;
    std::optional<std::string> b_cap;
    auto* bound_cmd = app.add_subcommand("bound", "Total bound over the residue disks");
    add_input(bound_cmd);
    bound_cmd->add_flag("--worst-case", worst, "Use the worst-case matrix on every disk");
    bound_cmd->add_flag("--strict", strict, "Take l from the part multiplicities instead of d");
    bound_cmd->add_option("--p", b_p, "Prime (worst case without a curve)");
    bound_cmd->add_option("--d", b_d, "Symmetric power")->check(CLI::PositiveNumber);
    bound_cmd->add_option("--g", b_g, "Genus (worst case without a curve)");
    bound_cmd->add_option("--disk-cap", b_cap, "Number of disks to assume (worst case without a curve)");
    bound_cmd->add_option("--rank", b_rank, "Asserted Mordell-Weil rank bound (worst case without a curve)");
    bound_cmd->add_flag("--assumption-A", assume_a, "Assert the analytic assumption (worst case without a curve)");

    std::string schema;
    auto* validate_cmd = app.add_subcommand("validate", "Check an input document against a schema");
    add_input(validate_cmd);
    validate_cmd->add_option("--schema", schema, "Schema id")->required()->check(CLI::IsMember(io::schema_ids()));

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return exit_input;
    }

    const bool as_json = format == "json";
    json report;
    std::ostringstream text;

    try {
        if (delta_cmd->parsed()) {
            core::require_prime(dt_p);
            if (dt_kmin > dt_kmax) throw InputError("--k-min exceeds --k-max");
            json rows = json::array();
            text << "delta(k, p=" << dt_p << ", l=" << dt_l << ")\n" << "   k  delta  k+delta\n";
            for (long long k = dt_kmin; k <= dt_kmax; ++k) {
                const long long dl = chabauty::delta(k, dt_p, dt_l);
                rows.push_back(json{{"k", k}, {"delta", dl}, {"entry", k + dl}});
                text << detail::pad(std::to_string(k), 4) << detail::pad(std::to_string(dl), 7)
                     << detail::pad(std::to_string(k + dl), 9) << "\n";
            }
            report = json{{"p", dt_p}, {"l", dt_l}, {"rows", rows}};
        } else if (trop_cmd->parsed()) {
            const json doc = detail::read_input(src);
            io::require_valid(doc, "trop");
            const auto f = io::decode_series(doc["series"]);
            const auto P = doc.contains("domain") ? io::decode_domain(doc["domain"]) : core::BoxDomain::orthant(f.dim());
            json verts = json::array();
            text << "vert over the domain:\n";
            for (const auto& t : core::vert_domain(f, P)) {
                verts.push_back(io::encode(t));
                text << "  " << detail::term_str(t) << "\n";
            }
            report = json{{"series", io::encode(f)}, {"domain", io::encode(P)}, {"vert_domain", verts}};
            if (f.dim() <= 3) {
                json cells = json::array();
                const auto cs = core::trop_cells(f, P);
                text << "maximal cells of Trop(f): " << cs.size() << "\n";
                for (const auto& c : cs) {
                    cells.push_back(io::encode(c));
                    text << "  dim " << c.dimension << "  tie";
                    for (const auto& u : c.tie) text << " " << u.str();
                    text << "  at " << detail::point_str(c.relative_interior) << "\n";
                }
                report["cells"] = cells;
            }
            if (doc.contains("weights")) {
                json mem = json::array();
                text << "membership:\n";
                for (const auto& w : doc["weights"]) {
                    const Point x = io::decode_point(w);
                    const bool in = core::trop_membership(f, x, P);
                    const auto v = core::vert_w(f, x, P);
                    json terms = json::array();
                    for (const auto& t : v.terms) terms.push_back(io::encode(t.exponent));
                    mem.push_back(json{{"w", io::encode(x)}, {"member", in}, {"min", io::encode(v.min)}, {"vert", terms}});
                    text << "  " << detail::point_str(x) << "  " << (in ? "in" : "not in") << "  min " << v.min.str()
                         << "\n";
                }
                report["membership"] = mem;
            }
        } else if (mv_cmd->parsed()) {
            const json doc = detail::read_input(src);
            io::require_valid(doc, "polytopes");
            report = json::object();
            if (doc.contains("polytopes")) {
                std::vector<polytope::Polytope> Q;
                for (const auto& pts : doc["polytopes"]) {
                    std::vector<Point> v;
                    for (const auto& x : pts) v.push_back(io::decode_point(x));
                    const std::size_t dim = v.front().size();
                    Q.push_back(polytope::convex_hull(std::move(v), dim));
                }
                const Rational mv = polytope::mixed_volume(Q);
                json qs = json::array();
                for (const auto& q : Q) qs.push_back(io::encode(q));
                report["polytopes"] = qs;
                report["mixed_volume"] = io::encode(mv);
                text << "mixed volume: " << detail::rat(mv) << "\n";
            }
            if (doc.contains("matrix")) {
                std::vector<std::vector<Rational>> rows;
                for (const auto& r : doc["matrix"]) rows.push_back(io::decode_point(r));
                const auto cmp = polytope::axis_simplex_mv(polytope::SquareMatrix::from_rows(rows));
                report["axis_simplex"] = json{{"per_over_dfact", io::encode(cmp.per_over_dfact)},
                                              {"exact_mv", io::encode(cmp.exact_mv)},
                                              {"agree", cmp.agree}};
                text << "axis simplices: Per/d! = " << detail::rat(cmp.per_over_dfact)
                     << ", exact MV = " << detail::rat(cmp.exact_mv) << (cmp.agree ? " (agree)" : " (DISAGREE)") << "\n";
            }
        } else if (bern_cmd->parsed()) {
            const json doc = detail::read_input(src);
            const auto sys = io::decode_system(doc);
            const auto m = method == "permanent" ? intersect::CountMethod::axis_permanent : intersect::CountMethod::mixed_volume;
            json nondeg = json::array();
            for (const auto& f : sys.members()) nondeg.push_back(intersect::is_nondegenerate(f));
            const auto sc = intersect::stable_count_bound(sys, m);
            report = json{{"system", io::encode(sys)}, {"nondegenerate", nondeg}, {"stable_count", io::encode(sc)},
                          {"method", method}};
            const bool polynomial = std::all_of(sys.members().begin(), sys.members().end(),
                                                [](const auto& f) { return f.is_polynomial(); });
            if (polynomial) {
                const long long b = intersect::bernstein_bound(sys);
                report["bernstein_bound"] = b;
                text << "Bernstein bound (torus): " << b << "\n";
            }
            text << "stable count: interior " << detail::rat(sc.interior) << ", total " << detail::rat(sc.total) << "\n";
            for (const auto& [T, n] : sc.strata) {
                text << "  nonzero coordinates {";
                for (std::size_t i = 0; i < T.size(); ++i) text << (i ? "," : "") << T[i] + 1;
                text << "}: " << detail::rat(n) << "\n";
            }
        } else if (deform_cmd->parsed()) {
            const json doc = detail::read_input(src);
            io::require_valid(doc, "deform");
            const auto sys = io::decode_system(doc["system"]);
            std::vector<std::vector<Point>> wit;
            for (const auto& ws : doc["witnesses"]) {
                std::vector<Point> a;
                for (const auto& w : ws) a.push_back(io::decode_point(w));
                wit.push_back(std::move(a));
            }
            std::vector<Point> samples;
            for (const auto& w : doc["samples"]) samples.push_back(io::decode_point(w));
            const auto R = intersect::deform_system(sys, wit, samples);
            report = io::encode(R);
            text << "vert data preserved: " << (R.trop_preserved ? "yes" : "no")
                 << ", local Newton polytopes preserved: " << (R.gamma_preserved ? "yes" : "no") << "\n";
            for (std::size_t r = 0; r < R.perturbations.size(); ++r) {
                const auto& pt = R.perturbations[r];
                text << "  member " << r + 1 << ": " << (pt.h ? "perturbed, v(eps) = " + pt.eps_val.str() : "unchanged")
                     << "\n";
            }
        } else if (count_cmd->parsed()) {
            const json doc = detail::read_input(src);
            const auto C = io::decode_curve(doc);
            const int cap = max_field_degree();
            if (e_max > cap)
                throw InputError("--e " + std::to_string(e_max) + " exceeds SYMCHAB_MAX_E = " + std::to_string(cap));
            const bool good = chabauty::good_reduction(C);
            report = json{{"curve", io::encode(C)}, {"good_reduction", good}};
            text << "good reduction at " << C.p << ": " << (good ? "yes" : "no") << "\n";
            if (good) {
                const auto S = chabauty::closed_points(C, e_max);
                json rows = json::array();
                text << "   e   #X(F_q)   closed points of degree e\n";
                for (int e = 1; e <= e_max; ++e) {
                    rows.push_back(json{{"e", e}, {"points", S.totals[e - 1]}, {"closed_points", S.counts[e - 1]}});
                    text << detail::pad(std::to_string(e), 4) << detail::pad(std::to_string(S.totals[e - 1]), 10)
                         << detail::pad(std::to_string(S.counts[e - 1]), 12) << "\n";
                }
                report["counts"] = rows;
            }
        } else if (sym_cmd->parsed()) {
            const json doc = detail::read_input(src);
            const auto C = io::decode_curve(doc);
            if (sym_d > max_field_degree())
                throw InputError("--d " + std::to_string(sym_d) + " exceeds SYMCHAB_MAX_E");
            const auto profiles = chabauty::sym_profiles(C, sym_d);
            json ps = json::array();
            text << profiles.size() << " residue disks of Sym^" << sym_d << "\n";
            for (const auto& P : profiles) {
                ps.push_back(io::encode(P));
                text << "  " << P.key() << "  N_P = " << P.n_p() << "\n";
            }
            report = json{{"curve", io::encode(C)}, {"d", sym_d}, {"profiles", ps}, {"count", profiles.size()}};
        } else if (bound_cmd->parsed()) {
            chabauty::BoundReport R;
            const bool has_input = !src.path.empty() || !src.inline_json.empty();
            if (has_input) {
                if (b_p || b_g || b_cap || b_rank || assume_a)
                    throw InputError("--p, --g, --disk-cap, --rank and --assumption-A only apply without a curve input");
                const json doc = detail::read_input(src);
                const auto C = io::decode_curve(doc);
                chabauty::CurveBoundOptions opt;
                opt.d = static_cast<int>(b_d.value_or(2));
                if (opt.d > max_field_degree()) throw InputError("--d exceeds SYMCHAB_MAX_E");
                opt.worst_case = worst;
                opt.delta_mode = strict ? chabauty::DeltaMode::strict : chabauty::DeltaMode::dimension;
                opt.orders = io::decode_orders(doc);
                R = chabauty::curve_bound(C, opt);
            } else {
                if (!worst) throw InputError("bound without a curve input needs --worst-case");
                if (strict) throw InputError("--strict needs a curve input");
                if (!b_p || !b_d || !b_g) throw InputError("--worst-case without a curve needs --p, --d and --g");
                std::optional<Integer> cap;
                if (b_cap) {
                    if (!io::detail::is_integer_text(*b_cap)) throw InputError("--disk-cap must be an integer");
                    cap = Integer(*b_cap);
                }
                std::optional<long long> rank = b_rank;
                R = chabauty::worst_case_bound(*b_p, *b_d, *b_g, cap, rank, assume_a);
            }
            report = io::encode(R);
            text << "p = " << R.p << ", d = " << R.d << ", g = " << R.genus << "  [" << R.label() << "]\n";
            text << "disks: " << R.disk_count.str() << " (" << chabauty::to_string(R.source) << ")\n";
            text << detail::pad("disk", 24) << detail::pad("Per", 8) << detail::pad("Per'", 10) << detail::pad("N_P", 5)
                 << detail::pad("count", 8) << detail::pad("contribution", 14) << "\n";
            for (const auto& r : R.rows)
                text << detail::pad(r.key, 24) << detail::pad(detail::rat(r.per), 8) << detail::pad(detail::rat(r.per_prime), 10)
                     << detail::pad(std::to_string(r.n_p), 5) << detail::pad(r.disks.str(), 8)
                     << detail::pad(detail::rat(r.contribution), 14) << "\n";
            text << "total: " << detail::rat(R.total) << "\n";
            text << "conservative total (N_P = 1): " << detail::rat(R.conservative_total) << "\n";
        } else if (validate_cmd->parsed()) {
            const json doc = detail::read_input(src);
            const auto v = io::validate(doc, schema);
            json list = json::array();
            for (const auto& x : v) {
                list.push_back(json{{"path", x.path}, {"message", x.message}});
                text << x.path << ": " << x.message << "\n";
            }
            if (v.empty()) text << "valid " << schema << "\n";
            report = json{{"schema", schema}, {"violations", list}};
            out << (as_json ? report.dump(2) + "\n" : text.str());
            return v.empty() ? exit_ok : exit_input;
        }
    } catch (const ComputationError& e) {
        err << "computation error: " << e.what() << "\n";
        return exit_computation;
    } catch (const InputError& e) {
        err << "input error: " << e.what() << "\n";
        return exit_input;
    } catch (const json::exception& e) {
        err << "input error: " << e.what() << "\n";
        return exit_input;
    }

    out << (as_json ? report.dump(2) + "\n" : text.str());
    return exit_ok;
}

} // namespace symchab::cli

#endif // SYMCHAB_CLI_HPP
