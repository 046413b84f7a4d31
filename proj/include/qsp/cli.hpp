#pragma once

#include "characters.hpp"
#include "identities.hpp"
#include "matrixrep.hpp"
#include "patterns.hpp"
#include "serialize.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace qsp {

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

inline WeightClass parse_class(const std::string& s) {
    if (s == "int") return WeightClass::Integral;
    if (s == "half") return WeightClass::HalfIntegral;
    if (s == "nc") return WeightClass::NonClassicalPlus;
    throw UsageError("unknown class '" + s + "' (expected int, half or nc)");
}

inline std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(item);
    return out;
}

inline Weight parse_weight(const std::string& s, int n, const std::string& cls) {
    WeightClass c = parse_class(cls);
    std::vector<HalfInt> e;
    for (auto& tok : split_commas(s)) {
        HalfInt x;
        try {
            x = parse_halfint(tok);
        } catch (const std::invalid_argument& ex) {
            throw UsageError(ex.what());
        }
        if (x < HalfInt(0)) throw UsageError("entry " + tok + " is negative");
        if (c == WeightClass::Integral && !x.is_integer()) throw UsageError("entry " + tok + " is not an integer (class int)");
        if (c != WeightClass::Integral && x.is_integer())
            throw UsageError("entry " + tok + " is not a half-odd integer (class " + cls + ")");
        e.push_back(x);
    }
    try {
        return Weight::make(n, e, c);
    } catch (const std::invalid_argument& ex) {
        throw UsageError(ex.what());
    }
}

inline std::vector<int> parse_epsilons(const std::string& s) {
    std::vector<int> out;
    for (auto& tok : split_commas(s)) {
        if (tok == "+" || tok == "+1" || tok == "1") out.push_back(1);
        else if (tok == "-" || tok == "-1") out.push_back(-1);
        else throw UsageError("epsilon '" + tok + "' is not a sign");
    }
    return out;
}

inline CharMethod parse_method(const std::string& s) {
    if (s == "gt") return CharMethod::gt_sum;
    if (s == "orbit") return CharMethod::orbit_sum;
    if (s == "tableaux") return CharMethod::tableaux_sum;
    if (s == "eigen") return CharMethod::eigen_route;
    if (s == "factored") return CharMethod::factored;
    throw UsageError("unknown method '" + s + "'");
}

inline const char* method_name(CharMethod m) {
    switch (m) {
        case CharMethod::gt_sum: return "gt";
        case CharMethod::orbit_sum: return "orbit";
        case CharMethod::tableaux_sum: return "tableaux";
        case CharMethod::eigen_route: return "eigen";
        case CharMethod::factored: return "factored";
    }
    return "?";
}

struct CliResult {
    int code = 0;
    std::string out, err;
};

namespace detail {

inline std::string poly_lines(const CharPolynomial& P) {
    std::string s;
    for (auto& [m, c] : P) s += c.str() + "  " + mono_str(m) + "\n";
    return s;
}

inline std::string report_lines(const VerifyReport& r) {
    std::ostringstream os;
    for (auto& c : r.checks) os << (c.pass ? "PASS " : "FAIL ") << c.name << "  " << c.residual << "\n";
    os << (r.all_pass() ? "all checks passed" : "some checks failed") << "\n";
    return os.str();
}

}  // namespace detail

// argv-style entry point without the program name
inline CliResult run_cli(std::vector<std::string> args) {
    CLI::App app{"Evaluation modules of the affine type-AI coideal: patterns, characters, verification"};
    app.require_subcommand(1);
    std::string format = "text", out_file;
    app.add_option("--format", format, "output format")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--out", out_file, "write output to this file");

    int n = 2;
    std::string weight_s, class_s = "int";
    auto add_weight = [&](CLI::App* sub) {
        sub->add_option("--n", n, "rank index n >= 2")->required();
        sub->add_option("--weight", weight_s, "comma-separated entries, k or k/2")->required();
        sub->add_option("--class", class_s, "int, half or nc");
        sub->add_option("--format", format, "output format")->check(CLI::IsMember({"text", "json"}));
        sub->add_option("--out", out_file, "write output to this file");
    };
    auto* s_enum = app.add_subcommand("enum", "list GT patterns (and tableaux)");
    add_weight(s_enum);
    auto* s_dim = app.add_subcommand("dim", "Weyl dimension and pattern count");
    add_weight(s_dim);
    std::string method_s = "gt";
    auto* s_char = app.add_subcommand("char", "boundary q-character");
    add_weight(s_char);
    s_char->add_option("--method", method_s, "gt, orbit, tableaux, eigen or factored");
    auto* s_drin = app.add_subcommand("drinfeld", "Drinfeld and dual Drinfeld polynomials");
    add_weight(s_drin);
    auto* s_cmp = app.add_subcommand("compare", "compare all character routes");
    add_weight(s_cmp);

    auto* s_verify = app.add_subcommand("verify", "verification suites");
    s_verify->require_subcommand(1);
    double q = 1.21, a = 0.73, tol = 1e-9;
    int smax = 3, mmax = 5;
    std::string eps_s;
    auto* s_rep = s_verify->add_subcommand("rep", "relations and theorems on a matrix representation");
    add_weight(s_rep);
    s_rep->add_option("--q", q, "numeric q");
    s_rep->add_option("--a", a, "numeric a");
    s_rep->add_option("--tol", tol, "tolerance for degree <= 4 relation words");
    s_rep->add_option("--smax", smax, "tower range -smax..smax")->check(CLI::Range(2, 8));
    s_rep->add_option("--mmax", mmax, "highest Theta index")->check(CLI::Range(1, 10));
    s_rep->add_option("--epsilons", eps_s, "signs eps_2..eps_{n+1}, e.g. +,-");
    int trials = 200;
    std::uint64_t seed = 1;
    auto* s_ids = s_verify->add_subcommand("identities", "exact summation identities");
    s_ids->add_option("--trials", trials, "number of random sequences")->check(CLI::PositiveNumber);
    s_ids->add_option("--seed", seed, "random seed");
    s_ids->add_option("--format", format, "output format")->check(CLI::IsMember({"text", "json"}));
    s_ids->add_option("--out", out_file, "write output to this file");

    CliResult res;
    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        res.out = app.help();
        return res;
    } catch (const CLI::ParseError& e) {
        res.code = 2;
        res.err = e.what();
        return res;
    }

    bool js = format == "json";
    json J;
    std::string text;
    try {
        if (s_ids->parsed()) {
            IdentityOptions o;
            o.trials = trials;
            o.seed = seed;
            auto r = run_identity_suite(o);
            J = to_json(r);
            std::ostringstream os;
            os << "trials " << r.trials << "\nphi failures " << r.phi_failures << "\npsi samples " << r.psi_samples
               << "\npsi failures " << r.psi_failures << "\nsingular resamples " << r.singular_resamples << "\n"
               << (r.pass() ? "all identities hold" : "identity failures") << "\n";
            text = os.str();
            res.code = r.pass() ? 0 : 1;
        } else {
            Weight w = parse_weight(weight_s, n, class_s);
            J["weight"] = to_json(w);
            if (s_enum->parsed()) {
                json ps = json::array();
                std::ostringstream os;
                for (auto& p : enumerate_patterns(w)) {
                    json e = to_json(p);
                    os << p.str();
                    if (w.cls == WeightClass::Integral && is_standard(p)) {
                        Tableau t = pattern_to_tableau(p);
                        e["tableau"] = to_json(t);
                        os << "  " << t.str();
                    }
                    ps.push_back(e);
                    os << "\n";
                }
                J["patterns"] = ps;
                text = os.str();
            } else if (s_dim->parsed()) {
                BigInt d = weyl_dim(w);
                auto cnt = enumerate_patterns(w).size();
                J["weyl_dim"] = bigint_to_json(d);
                J["dim"] = bigint_to_json(expected_pattern_count(w));
                J["patterns"] = cnt;
                text = expected_pattern_count(w).str() + "\n";
                res.code = BigInt(cnt) == expected_pattern_count(w) ? 0 : 1;
            } else if (s_char->parsed()) {
                CharMethod m = parse_method(method_s);
                auto P = boundary_qcharacter(w, m);
                J["method"] = method_name(m);
                J["character"] = to_json(P);
                text = detail::poly_lines(P);
            } else if (s_drin->parsed()) {
                if (w.cls != WeightClass::Integral) throw UsageError("Drinfeld polynomials need an integral weight");
                auto d = drinfeld_polynomials(w);
                J["polynomials"] = to_json(d);
                auto s0 = sigma0(w);
                bool ok = true;
                for (int k = 1; k <= w.n; ++k)
                    ok = ok && eigen_from_roots(d.P[k - 1], d.P_inverted[k - 1]) == theta_eigenvalue_exact(s0, k);
                J["consistent"] = ok;
                std::ostringstream os;
                auto poly = [](const std::vector<HalfInt>& rs) {
                    std::string s;
                    for (auto m : rs) s += "(1-q^" + m.str() + "az)";
                    return s.empty() ? std::string("1") : s;
                };
                for (int k = 1; k <= w.n; ++k)
                    os << "P_" << k << " = " << poly(d.P[k - 1]) << "    Q_" << k << " = " << poly(d.Q[k - 1]) << "\n";
                os << (ok ? "consistent with the highest-weight eigenvalue" : "INCONSISTENT") << "\n";
                text = os.str();
                res.code = ok ? 0 : 1;
            } else if (s_cmp->parsed()) {
                auto ref = boundary_qcharacter(w, CharMethod::gt_sum);
                bool all = true;
                json cmp = json::object();
                std::ostringstream os;
                for (auto m : {CharMethod::gt_sum, CharMethod::orbit_sum, CharMethod::tableaux_sum, CharMethod::eigen_route,
                               CharMethod::factored}) {
                    bool eq = boundary_qcharacter(w, m) == ref;
                    all = all && eq;
                    cmp[method_name(m)] = eq;
                    os << method_name(m) << (eq ? " agrees" : " DIFFERS") << "\n";
                }
                J["agree"] = cmp;
                J["identical"] = all;
                J["terms"] = ref.size();
                J["total"] = bigint_to_json(poly_total(ref));
                text = os.str() + (all ? "identical" : "not identical") + "\n";
                res.code = all ? 0 : 1;
            } else if (s_rep->parsed()) {
                RepParams par;
                par.q = q;
                par.a = a;
                if (!eps_s.empty()) par.epsilons = parse_epsilons(eps_s);
                if (w.nc() && (!par.epsilons || static_cast<int>(par.epsilons->size()) != n))
                    throw UsageError("non-classical modules need --epsilons with " + std::to_string(n) + " signs");
                GTModule M(w);
                Tower t = build_generator_tower(M, par, -smax, smax, mmax);
                VerifyTolerances tl{tol, std::max(tol, 1e-8), std::max(tol, 1e-7)};
                auto r = verify_relations(M, t, tl);
                if (w.nc()) {
                    double sp = epsilon_spread(M, par, std::min(mmax, 4));
                    r.checks.push_back({"epsilon_independence", sp, sp <= tl.theta});
                }
                J["dim"] = M.dim();
                J["report"] = to_json(r);
                text = "dim " + std::to_string(M.dim()) + "\n" + detail::report_lines(r);
                res.code = r.all_pass() ? 0 : 1;
            }
        }
    } catch (const UsageError& e) {
        res.code = 2;
        res.err = std::string("usage error: ") + e.what();
        return res;
    } catch (const std::exception& e) {
        res.code = 1;
        res.err = std::string("error: ") + e.what();
        return res;
    }

    res.out = js ? J.dump(2) + "\n" : text;
    if (!out_file.empty()) {
        std::ofstream f(out_file);
        if (!f) {
            res.code = 2;
            res.err = "cannot write " + out_file;
            return res;
        }
        f << res.out;
        res.out.clear();
    }
    return res;
}

}  // namespace qsp
