#pragma once

#include "characters.hpp"
#include "identities.hpp"
#include "matrixrep.hpp"
#include "patterns.hpp"
#include "qarith.hpp"

#include <json.hpp>

#include <limits>
#include <stdexcept>
#include <string>

namespace qsp {

using json = nlohmann::json;

// big integers: a JSON number when it fits in int64, a decimal string otherwise
inline json bigint_to_json(const BigInt& v) {
    if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
        return static_cast<std::int64_t>(v);
    return v.str();
}

inline BigInt bigint_from_json(const json& j) {
    if (j.is_number_integer()) return BigInt(j.get<std::int64_t>());
    if (j.is_string()) return BigInt(j.get<std::string>());
    throw std::invalid_argument("expected an integer");
}

inline VarKind var_kind_from_string(const std::string& s) {
    if (s == "Y") return VarKind::Y;
    if (s == "X") return VarKind::X;
    if (s == "Xt") return VarKind::Xt;
    throw std::invalid_argument("unknown variable kind '" + s + "'");
}

inline json to_json(const CharMonomial& M) {
    json vars = json::array();
    for (auto& [v, p] : M)
        vars.push_back({{"kind", to_string(v.kind)}, {"node", v.node}, {"sign", v.sign}, {"exp2", v.exp2}, {"power", p}});
    return {{"vars", vars}};
}

inline CharMonomial monomial_from_json(const json& j) {
    CharMonomial M;
    for (auto& v : j.at("vars"))
        mono_mul_var(M,
                     {var_kind_from_string(v.at("kind").get<std::string>()), v.at("node").get<int>(),
                      v.at("sign").get<int>(), v.at("exp2").get<int>()},
                     v.at("power").get<int>());
    return M;
}

inline json to_json(const CharPolynomial& P) {
    json terms = json::array();
    for (auto& [m, c] : P) terms.push_back({{"monomial", to_json(m)}, {"mult", bigint_to_json(c)}});
    return {{"terms", terms}};
}

inline CharPolynomial polynomial_from_json(const json& j) {
    CharPolynomial P;
    for (auto& t : j.at("terms")) poly_add(P, monomial_from_json(t.at("monomial")), bigint_from_json(t.at("mult")));
    return P;
}

inline json to_json(const FactorProduct& f) {
    json fs = json::array();
    for (auto& [k, e] : f.factors()) fs.push_back({{"sign", k.sign}, {"m2", k.m.twice()}, {"exp", e}});
    return {{"factors", fs}};
}

inline FactorProduct factor_product_from_json(const json& j) {
    FactorProduct f;
    for (auto& x : j.at("factors"))
        f.add(x.at("sign").get<int>(), HalfInt::from_twice(x.at("m2").get<long long>()), x.at("exp").get<int>());
    return f;
}

// rows j = 2..n+1 as doubled entries, top row last
inline json to_json(const GTPattern& p) {
    json rows = json::array();
    for (int j = 2; j <= p.n + 1; ++j) {
        json r = json::array();
        for (auto x : p.rows[j]) r.push_back(x.twice());
        rows.push_back(r);
    }
    return {{"n", p.n}, {"kind", p.kind == PatternKind::Classical ? "classical" : "nonclassical"}, {"rows", rows}};
}

inline GTPattern pattern_from_json(const json& j) {
    GTPattern p;
    p.n = j.at("n").get<int>();
    std::string kind = j.at("kind").get<std::string>();
    if (kind != "classical" && kind != "nonclassical") throw std::invalid_argument("unknown pattern kind '" + kind + "'");
    p.kind = kind == "classical" ? PatternKind::Classical : PatternKind::NonClassical;
    const json& rows = j.at("rows");
    if (static_cast<int>(rows.size()) != p.n) throw std::invalid_argument("pattern needs n rows");
    p.rows.assign(p.n + 2, {});
    for (int j2 = 2; j2 <= p.n + 1; ++j2)
        for (auto& x : rows.at(j2 - 2)) p.rows[j2].push_back(HalfInt::from_twice(x.get<long long>()));
    if (auto e = validation_error(p)) throw std::invalid_argument("invalid pattern: " + *e);
    return p;
}

inline json to_json(const Tableau& t) { return t.rows; }

inline json to_json(const VerifyReport& r) {
    json cs = json::array();
    for (auto& c : r.checks) cs.push_back({{"name", c.name}, {"residual", c.residual}, {"pass", c.pass}});
    return {{"tolerance", r.tol}, {"pass", r.all_pass()}, {"checks", cs}};
}

inline VerifyReport verify_report_from_json(const json& j) {
    VerifyReport r;
    r.tol = j.at("tolerance").get<double>();
    for (auto& c : j.at("checks"))
        r.checks.push_back({c.at("name").get<std::string>(), c.at("residual").get<double>(), c.at("pass").get<bool>()});
    return r;
}

inline json to_json(const Weight& w) {
    json e = json::array();
    for (auto x : w.entries) e.push_back(x.str());
    return {{"n", w.n}, {"weight", e}, {"class", to_string(w.cls)}};
}

inline json to_json(const RootFactorization& R) {
    json terms = json::array();
    for (auto& t : R.terms) {
        json fs = json::array();
        for (auto& a : t.factors) fs.push_back({{"node", a.node}, {"sign", a.sign}, {"k", a.k}});
        terms.push_back({{"mult", bigint_to_json(t.mult * R.base_mult)}, {"tableau", to_json(t.tableau)}, {"A", fs}});
    }
    return {{"base", to_json(R.base)}, {"terms", terms}};
}

inline json roots_to_json(const std::vector<std::vector<HalfInt>>& roots) {
    json out = json::array();
    for (std::size_t k = 0; k < roots.size(); ++k) {
        json rs = json::array();
        for (auto m : roots[k]) rs.push_back({{"sign", 1}, {"m2", m.twice()}});
        out.push_back({{"node", k + 1}, {"roots", rs}});
    }
    return out;
}

inline json to_json(const DrinfeldData& d) { return {{"drinfeld", roots_to_json(d.P)}, {"dual", roots_to_json(d.Q)}}; }

inline json to_json(const IdentityReport& r) {
    json byp = json::object();
    for (auto& [p, c] : r.by_p) byp[std::to_string(p)] = c;
    return {{"trials", r.trials},
            {"phi_failures", r.phi_failures},
            {"psi_sequences", r.psi_sequences},
            {"psi_samples", r.psi_samples},
            {"psi_failures", r.psi_failures},
            {"singular_resamples", r.singular_resamples},
            {"sequences_by_p", byp},
            {"pass", r.pass()}};
}

}  // namespace qsp
