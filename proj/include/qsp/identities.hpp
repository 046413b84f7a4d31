#pragma once

#include "patterns.hpp"
#include "qarith.hpp"

#include <map>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace qsp {

struct SingularConfiguration : std::domain_error {
    using std::domain_error::domain_error;
};

// coordinates of rows 2p+1, 2p, 2p-1 of a pattern; l'' has p-1 entries (the last one missing)
struct TripleSequence {
    std::vector<HalfInt> l, lp, lpp;

    int p() const { return static_cast<int>(lp.size()); }

    static std::optional<std::string> validation_error(const std::vector<HalfInt>& l, const std::vector<HalfInt>& lp,
                                                       const std::vector<HalfInt>& lpp) {
        int p = static_cast<int>(lp.size());
        if (p < 1) return "empty sequence";
        if (static_cast<int>(l.size()) != p) return "l needs " + std::to_string(p) + " entries";
        if (static_cast<int>(lpp.size()) != p - 1) return "l'' needs " + std::to_string(p - 1) + " entries";
        // back to pattern entries: rows 2p+1, 2p, 2p-1
        std::vector<HalfInt> top, mid, bot;
        for (int i = 1; i <= p; ++i) top.push_back(l[i - 1] - HalfInt(p + 1 - i));
        for (int i = 1; i <= p; ++i) mid.push_back(lp[i - 1] - HalfInt(p - i));
        for (int i = 1; i < p; ++i) bot.push_back(lpp[i - 1] - HalfInt(p - i));
        bool integral = top[0].is_integer();
        for (auto* row : {&top, &mid, &bot})
            for (auto x : *row)
                if (x.is_integer() != integral) return "mixed integral and half-integral entries";
        for (int i = 0; i < p; ++i) {
            HalfInt hi = top[i];
            HalfInt lo = i + 1 < p ? top[i + 1] : -top[i];
            if (i + 1 < p && top[i + 1] < HalfInt(0)) return "negative entry in row 2p+1";
            if (mid[i] > hi || mid[i] < lo) return "row 2p does not interlace row 2p+1";
        }
        for (int i = 0; i + 1 < p; ++i)
            if (bot[i] > mid[i] || bot[i] < abs(mid[i + 1])) return "row 2p-1 does not interlace row 2p";
        return std::nullopt;
    }

    static TripleSequence make(std::vector<HalfInt> l, std::vector<HalfInt> lp, std::vector<HalfInt> lpp) {
        if (auto e = validation_error(l, lp, lpp)) throw std::invalid_argument("invalid triple sequence: " + *e);
        return {std::move(l), std::move(lp), std::move(lpp)};
    }

    static TripleSequence from_pattern(const GTPattern& pat, int P) {
        if (P < 1 || 2 * P > pat.n) throw std::out_of_range("row 2p must lie below the top row");
        auto row = [&](int j) {
            std::vector<HalfInt> r;
            for (int i = 1; i <= j / 2; ++i) r.push_back(l_coord(pat, i, j));
            return r;
        };
        return make(row(2 * P + 1), row(2 * P), row(2 * P - 1));
    }
};

// exact arithmetic in Q(sqrt q)
class QField {
public:
    explicit QField(Rational q) : q_(std::move(q)) {
        if (q_ == 0 || q_ == 1 || q_ == -1) throw std::domain_error("q must avoid 0, +-1");
        if (q_ < 0) throw std::domain_error("q must be positive");
    }
    QuadRational c(const Rational& r) const { return {r, 0, q_}; }
    QuadRational pw(HalfInt k) const { return quad_qpow(q_, k); }
    QuadRational br(HalfInt x) const { return (pw(x) - pw(-x)) / (pw(HalfInt(1)) - pw(HalfInt(-1))); }
    // 1 - q^e a z
    QuadRational lin(HalfInt e, const Rational& az) const { return c(1) - pw(e) * c(az); }
    QuadRational div(const QuadRational& x, const QuadRational& y) const {
        if (y.is_zero()) throw SingularConfiguration("vanishing denominator");
        return x / y;
    }
    const Rational& q() const { return q_; }

private:
    Rational q_;
};

namespace detail {
inline QuadRational f_xy(const QField& F, HalfInt x, HalfInt y) { return F.br(x + y) * F.br(x - y - HalfInt(1)); }

inline QuadRational phi_r(const QField& F, const std::vector<HalfInt>& l, const std::vector<HalfInt>& lp,
                          const std::vector<HalfInt>& lpp, int r) {
    QuadRational num = F.c(1), den = F.c(1);
    for (auto x : l) num = num * f_xy(F, x, lp[r]);
    for (auto x : lpp) num = num * f_xy(F, x, lp[r]);
    for (int s = 0; s < static_cast<int>(lp.size()); ++s) {
        if (s == r) continue;
        den = den * f_xy(F, lp[s], lp[r]) * f_xy(F, lp[s] + HalfInt(1), lp[r]);
    }
    return F.div(num, den);
}

inline QuadRational psi_i(const QField& F, const std::vector<HalfInt>& l, const std::vector<HalfInt>& lp,
                          const std::vector<HalfInt>& lpp, int i, const Rational& az) {
    HalfInt x = lp[i], one(1);
    QuadRational num = F.br(x) * F.br(x + one);
    for (auto y : l) num = num * F.br(y + x) * F.br(abs(y - x - one));
    for (auto y : lpp) num = num * F.br(y + x) * F.br(abs(y - x - one));
    QuadRational den = F.lin(x * 2 + one, az) * F.lin(-(x * 2) - one, az);
    for (int r = 0; r < static_cast<int>(lp.size()); ++r) {
        if (r == i) continue;
        HalfInt y = lp[r];
        den = den * F.br(y + x) * F.br(abs(y - x)) * F.br(y + x + one) * F.br(abs(y - x - one));
    }
    return F.div(num, den);
}
}  // namespace detail

inline QuadRational phi_value(const TripleSequence& s, const Rational& q) {
    QField F(q);
    QuadRational tot = F.c(0);
    for (int r = 0; r < s.p(); ++r) {
        auto lm = s.lp;
        lm[r] -= HalfInt(1);
        tot = tot + F.div(detail::phi_r(F, s.l, lm, s.lpp, r) - detail::phi_r(F, s.l, s.lp, s.lpp, r), F.br(s.lp[r] * 2));
    }
    return tot;
}

struct PsiSides {
    QuadRational lhs, rhs;
};

inline PsiSides psi_both_sides(const TripleSequence& s, const Rational& q, const Rational& a, const Rational& z) {
    QField F(q);
    Rational az = a * z;
    QuadRational qq = F.pw(HalfInt(1)) - F.pw(HalfInt(-1));
    QuadRational lhs = F.c(1);
    for (int i = 0; i < s.p(); ++i) {
        auto lm = s.lp;
        lm[i] -= HalfInt(1);
        QuadRational diff = detail::psi_i(F, s.l, s.lp, s.lpp, i, az) - detail::psi_i(F, s.l, lm, s.lpp, i, az);
        lhs = lhs - F.div(F.c(az) * qq * qq * diff, F.br(s.lp[i] * 2));
    }
    QuadRational rhs = F.c(1);
    HalfInt one(1);
    for (int i = 0; i < s.p(); ++i) {
        if (i < static_cast<int>(s.l.size())) rhs = rhs * F.lin(s.l[i] * 2 - one, az) * F.lin(one - s.l[i] * 2, az);
        rhs = F.div(rhs, F.lin(s.lp[i] * 2 + one, az) * F.lin(-one - s.lp[i] * 2, az));
        // a missing l'' entry contributes as l'' = 0
        HalfInt l2 = i < static_cast<int>(s.lpp.size()) ? s.lpp[i] : HalfInt(0);
        rhs = F.div(rhs * F.lin(l2 * 2 - one, az) * F.lin(one - l2 * 2, az),
                    F.lin(s.lp[i] * 2 - one, az) * F.lin(one - s.lp[i] * 2, az));
    }
    return {lhs, rhs};
}

struct IdentityFailure {
    std::string what;
    TripleSequence seq;
};

struct IdentityReport {
    int trials = 0;
    int phi_checked = 0, phi_failures = 0;
    int psi_sequences = 0, psi_samples = 0, psi_failures = 0;
    int singular_resamples = 0;
    int max_p = 0;
    std::map<int, int> by_p;
    std::vector<IdentityFailure> failures;
    bool pass() const { return phi_failures == 0 && psi_failures == 0 && trials > 0 && phi_checked == trials; }
};

struct IdentityOptions {
    int trials = 200;
    std::uint64_t seed = 1;
    Rational q{3, 2};
    Rational a{2, 5};
    int max_n = 9;  // rows 2p <= n, so p <= 4
    int max_entry = 6;
};

inline IdentityReport run_identity_suite(const IdentityOptions& opt) {
    std::mt19937_64 rng(opt.seed);
    IdentityReport rep;
    auto uni = [&](long long lo, long long hi) { return std::uniform_int_distribution<long long>(lo, hi)(rng); };
    while (rep.trials < opt.trials) {
        int P = static_cast<int>(uni(1, opt.max_n / 2));
        int n = static_cast<int>(uni(2 * P, opt.max_n));
        int r = (n + 1) / 2;
        bool half = uni(0, 4) < 2;
        std::vector<long long> raw(r);
        for (auto& x : raw) x = uni(0, opt.max_entry);
        std::sort(raw.rbegin(), raw.rend());
        std::vector<HalfInt> top;
        for (auto x : raw) top.push_back(half ? HalfInt::from_twice(2 * x + 1) : HalfInt(x));
        GTPattern pat = random_pattern(n, top, PatternKind::Classical, rng);
        TripleSequence s = TripleSequence::from_pattern(pat, P);
        QuadRational phi;
        try {
            phi = phi_value(s, opt.q);
        } catch (const SingularConfiguration&) {
            ++rep.singular_resamples;
            continue;
        }
        ++rep.trials;
        ++rep.phi_checked;
        rep.max_p = std::max(rep.max_p, s.p());
        ++rep.by_p[s.p()];
        if (!(phi == QuadRational(1, 0, opt.q))) {
            ++rep.phi_failures;
            rep.failures.push_back({"Phi != 1", s});
        }
        // enough distinct z to pin down a rational function of degree <= 4p in z
        int need = 8 * s.p() + 1;
        std::set<Rational> used;
        int got = 0, attempts = 0;
        bool ok = true;
        while (got < need && attempts < 50 * need) {
            ++attempts;
            Rational z(uni(-60, 60), uni(1, 37));
            if (!used.insert(z).second) continue;
            try {
                auto sides = psi_both_sides(s, opt.q, opt.a, z);
                ++got;
                if (!(sides.lhs == sides.rhs)) ok = false;
            } catch (const SingularConfiguration&) {
                ++rep.singular_resamples;
            }
        }
        ++rep.psi_sequences;
        rep.psi_samples += got;
        if (got < need || !ok) {
            ++rep.psi_failures;
            rep.failures.push_back({got < need ? "too few regular z samples" : "Psi sides differ", s});
        }
    }
    return rep;
}

}  // namespace qsp
