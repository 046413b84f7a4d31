#pragma once

#include "patterns.hpp"
#include "qarith.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace qsp {

// ---------------------------------------------------------------------------
// exact Theta eigenvalues

namespace detail {
inline int neg1_pow(long long x) { return (x % 2 == 0) ? 1 : -1; }
}  // namespace detail

// eigenvalue of the normalized series on pattern p at node k
inline FactorProduct theta_eigenvalue_exact(const GTPattern& p, int k) {
    if (k < 1 || k > p.n) throw std::out_of_range("node out of range");
    bool nc = p.kind == PatternKind::NonClassical;
    FactorProduct f;
    auto add = [&](HalfInt x, int e) {
        int eps = 1;
        if (nc) {
            // (1 + (-1)^k (-q)^x az) = (1 - eps q^x az)
            if (!x.is_integer()) throw std::logic_error("non-integral exponent in non-classical eigenvalue");
            eps = -detail::neg1_pow(k) * detail::neg1_pow(x.as_integer());
        }
        f.add(eps, x, e);
    };
    for (int j = 1; j <= (k + 1) / 2; ++j) {
        HalfInt z1 = zeta(p, j, k + 1), z = zeta(p, j, k), zm = zeta(p, j, k - 1);
        add(z1 - HalfInt(1), 1);
        add(HalfInt(1) - z1, 1);
        add(z, -1);
        add(-z, -1);
        add(zm - HalfInt(1), 1);
        add(HalfInt(1) - zm, 1);
        add(z - HalfInt(2), -1);
        add(HalfInt(2) - z, -1);
    }
    return f;
}

inline std::vector<FactorProduct> theta_eigenvalues(const GTPattern& p) {
    std::vector<FactorProduct> out;
    for (int k = 1; k <= p.n; ++k) out.push_back(theta_eigenvalue_exact(p, k));
    return out;
}

// ---------------------------------------------------------------------------
// formal variables

enum class VarKind { Y = 0, X = 1, Xt = 2 };

inline std::string to_string(VarKind k) {
    switch (k) {
        case VarKind::Y: return "Y";
        case VarKind::X: return "X";
        case VarKind::Xt: return "Xt";
    }
    return "?";
}

struct CharVariable {
    VarKind kind = VarKind::Y;
    int node = 1;
    int sign = 1;
    int exp2 = 2;  // exponent of q is exp2/2

    auto operator<=>(const CharVariable&) const = default;
    bool operator==(const CharVariable&) const = default;

    std::string str() const {
        std::string e = exp2 % 2 == 0 ? std::to_string(exp2 / 2) : std::to_string(exp2) + "/2";
        return to_string(kind) + "[" + std::to_string(node) + "," + (sign < 0 ? "-" : "") + "q^" + e + "]";
    }
};

using CharMonomial = std::map<CharVariable, int>;
using CharPolynomial = std::map<CharMonomial, BigInt>;

// rewrite one raw variable power into the free basis:
// Y at exp2 = 2k (k >= 1), X at exp2 = 1 or even >= 2, Xt at exp2 = 0 (sign +), 1, or even >= 2
inline void mono_mul_var(CharMonomial& M, CharVariable v, int power);

namespace detail {
inline void bump(CharMonomial& M, const CharVariable& v, int power) {
    if (power == 0) return;
    int& s = M[v];
    s += power;
    if (s == 0) M.erase(v);
}
}  // namespace detail

inline void mono_mul_var(CharMonomial& M, CharVariable v, int power) {
    if (power == 0) return;
    if (v.sign != 1 && v.sign != -1) throw std::invalid_argument("variable sign must be +-1");
    switch (v.kind) {
        case VarKind::Y:
            if (v.exp2 % 2 != 0) throw std::invalid_argument("Y variables need integer q-exponents");
            if (v.exp2 == 0) return;  // Y_{+-1} = 1
            if (v.exp2 < 0) {
                v.exp2 = -v.exp2;
                power = -power;
            }
            detail::bump(M, v, power);
            return;
        case VarKind::X:
            if (v.sign != 1) throw std::invalid_argument("X variables carry sign +");
            if (v.exp2 < 0) {
                v.exp2 = -v.exp2;
                power = -power;
            }
            if (v.exp2 == 0) return;
            if (v.exp2 % 2 == 1 && v.exp2 >= 3) {
                // X_{q^{k+1/2}} = Y_{q^k} X_{q^{k-1/2}}^{-1}
                mono_mul_var(M, {VarKind::Y, v.node, 1, v.exp2 - 1}, power);
                mono_mul_var(M, {VarKind::X, v.node, 1, v.exp2 - 2}, -power);
                return;
            }
            detail::bump(M, v, power);
            return;
        case VarKind::Xt:
            if (v.exp2 < 0) {
                // Xt_{s q^{-k/2}} = Xt_{-s q^{k/2}}^{-1}
                v.exp2 = -v.exp2;
                v.sign = -v.sign;
                power = -power;
            }
            if (v.exp2 == 0 && v.sign < 0) {
                v.sign = 1;
                power = -power;
            }
            if (v.exp2 % 2 == 1 && v.exp2 >= 3) {
                // Xt_{s q^{k+1/2}} = Y_{-s q^k} Xt_{-s q^{k-1/2}}^{-1}
                mono_mul_var(M, {VarKind::Y, v.node, -v.sign, v.exp2 - 1}, power);
                mono_mul_var(M, {VarKind::Xt, v.node, -v.sign, v.exp2 - 2}, -power);
                return;
            }
            detail::bump(M, v, power);
            return;
    }
}

inline CharMonomial var(VarKind kind, int node, int sign, int exp2, int power = 1) {
    CharMonomial M;
    mono_mul_var(M, {kind, node, sign, exp2}, power);
    return M;
}

inline CharMonomial mono_mul(const CharMonomial& A, const CharMonomial& B) {
    CharMonomial M = A;
    for (auto& [v, p] : B) detail::bump(M, v, p);
    return M;
}

inline CharMonomial mono_pow(const CharMonomial& A, int k) {
    CharMonomial M;
    if (k == 0) return M;
    for (auto& [v, p] : A) M[v] = p * k;
    return M;
}

inline CharMonomial mono_div(const CharMonomial& A, const CharMonomial& B) { return mono_mul(A, mono_pow(B, -1)); }

inline std::string mono_str(const CharMonomial& M) {
    if (M.empty()) return "1";
    std::string s;
    for (auto& [v, p] : M) {
        if (!s.empty()) s += " ";
        s += v.str();
        if (p != 1) s += "^" + std::to_string(p);
    }
    return s;
}

inline std::string poly_str(const CharPolynomial& P) {
    if (P.empty()) return "0";
    std::string s;
    for (auto& [m, c] : P) {
        if (!s.empty()) s += " + ";
        if (c != 1) s += c.str() + "*";
        s += mono_str(m);
    }
    return s;
}

inline void poly_add(CharPolynomial& P, const CharMonomial& M, const BigInt& c) {
    if (c == 0) return;
    BigInt& slot = P[M];
    slot += c;
    if (slot == 0) P.erase(M);
}

inline BigInt poly_total(const CharPolynomial& P) {
    BigInt t = 0;
    for (auto& [m, c] : P) t += c;
    return t;
}

// Y_{i, s q^k}, k integer
inline CharMonomial Yv(int node, int sign, long long k, int power = 1) {
    return var(VarKind::Y, node, sign, static_cast<int>(2 * k), power);
}

// A_{i, s q^k} = Y_{i,sq^{k+1}} Y_{i,sq^{k-1}} prod_{j adjacent} Y_{j,sq^k}^{-1}
inline CharMonomial a_monomial(int node, int sign, long long k, int n) {
    CharMonomial M = mono_mul(Yv(node, sign, k + 1), Yv(node, sign, k - 1));
    if (node > 1) M = mono_mul(M, Yv(node - 1, sign, k, -1));
    if (node < n) M = mono_mul(M, Yv(node + 1, sign, k, -1));
    return M;
}

// Upsilon_{i, s q^e} = Y_{i, s q^{e+i}}^{-1} Y_{i+1, s q^{e+i-1}}, Y_{n+1} = 1
inline CharMonomial upsilon(int i, int sign, long long e, int n) {
    CharMonomial M = Yv(i, sign, e + i, -1);
    if (i + 1 <= n) M = mono_mul(M, Yv(i + 1, sign, e + i - 1));
    return M;
}

// ---------------------------------------------------------------------------
// eigenvalue <-> monomial dictionary

inline FactorProduct variable_eigen(const CharVariable& v) {
    FactorProduct f;
    HalfInt x = HalfInt::from_twice(v.exp2);
    HalfInt one(1), h = HalfInt::half();
    switch (v.kind) {
        case VarKind::Y:
            f.add(v.sign, x - one, 1).add(v.sign, one - x, 1).add(v.sign, x + one, -1).add(v.sign, -x - one, -1);
            break;
        case VarKind::X:
            f.add(1, x - h, 1).add(1, h - x, 1).add(1, x + h, -1).add(1, -x - h, -1);
            break;
        case VarKind::Xt:
            f.add(v.sign, x - h, 1).add(v.sign, h - x, 1).add(-v.sign, x + h, -1).add(-v.sign, -x - h, -1);
            break;
    }
    return f;
}

inline std::vector<FactorProduct> monomial_eigen(const CharMonomial& M, int n) {
    std::vector<FactorProduct> out(n);
    for (auto& [v, p] : M) {
        if (v.node < 1 || v.node > n) throw std::out_of_range("variable node out of range");
        FactorProduct e = variable_eigen(v);
        for (auto& [k, ex] : e.factors()) out[v.node - 1].add(k.sign, k.m, ex * p);
    }
    return out;
}

struct NoMatchingError : std::runtime_error {
    std::vector<FactorProduct> leftover;
    explicit NoMatchingError(std::vector<FactorProduct> left)
        : std::runtime_error(describe(left)), leftover(std::move(left)) {}
    static std::string describe(const std::vector<FactorProduct>& left) {
        std::string s = "eigenvalue does not decompose; leftover:";
        for (std::size_t i = 0; i < left.size(); ++i)
            if (!left[i].is_one()) s += " node " + std::to_string(i + 1) + ": " + left[i].str() + ";";
        return s;
    }
};

// top-down solve from the largest |m|, then verify by re-expansion
inline CharMonomial eigen_to_monomial(const std::vector<FactorProduct>& eigs, WeightClass cls) {
    int n = static_cast<int>(eigs.size());
    CharMonomial M;
    for (int node = 1; node <= n; ++node) {
        const FactorProduct& f = eigs[node - 1];
        for (int s : {1, -1}) {
            std::map<long long, int> c;  // c_j: exponent of u_j = (1 - s q^j az)(1 - s q^-j az), j >= 0
            long long J = 0;
            for (auto& [k, e] : f.factors()) {
                if (k.sign != s || !k.m.is_integer() || k.m < HalfInt(0)) continue;
                long long m = k.m.as_integer();
                if (m == 0) {
                    if (e % 2 != 0) continue;  // left for the residue check
                    c[0] = e / 2;
                } else {
                    c[m] = e;
                }
                J = std::max(J, m);
            }
            if (c.empty()) continue;
            std::map<long long, int> y;  // exponent of Y_{s q^k}
            for (long long j = J + 1; j >= 2; --j) {
                int val = (y.count(j + 1) ? y[j + 1] : 0) - (c.count(j) ? c[j] : 0);
                if (val != 0) y[j - 1] = val;
            }
            for (auto& [k, e] : y) mono_mul_var(M, {VarKind::Y, node, s, static_cast<int>(2 * k)}, e);
            int x = (c.count(0) ? c[0] : 0) - (y.count(1) ? y[1] : 0);
            if (x != 0) {
                if (cls == WeightClass::HalfIntegral && s == 1) mono_mul_var(M, {VarKind::X, node, 1, 1}, x);
                if (cls == WeightClass::NonClassicalPlus) mono_mul_var(M, {VarKind::Xt, node, s, 1}, x);
            }
        }
    }
    auto back = monomial_eigen(M, n);
    std::vector<FactorProduct> left(n);
    bool ok = true;
    for (int i = 0; i < n; ++i) {
        left[i] = eigs[i] / back[i];
        ok = ok && left[i].is_one();
    }
    if (!ok) throw NoMatchingError(left);
    return M;
}

inline CharMonomial xi_eigen(const GTPattern& p, WeightClass cls) { return eigen_to_monomial(theta_eigenvalues(p), cls); }

// ---------------------------------------------------------------------------
// closed forms on patterns (evaluated on the standard representative)

// Z-form (half-integral) when z_form = true, otherwise the Z' product form
inline CharMonomial xi_pattern(const GTPattern& p0, WeightClass cls, bool z_form = false) {
    GTPattern p = p0.kind == PatternKind::Classical ? standardize(p0) : p0;
    int n = p.n;
    CharMonomial M;
    int ysign = cls == WeightClass::NonClassicalPlus ? -1 : 1;
    // kappa values are (zeta differences - 1)/2, possibly in 1/2 + Z
    auto kappa1 = [&](int j, int k) { return (zeta(p, j, k + 1) - zeta(p, j, k) - HalfInt(1)).twice(); };
    auto kappa2 = [&](int j, int k) { return (zeta(p, j, k) - zeta(p, j, k - 1) - HalfInt(1)).twice(); };
    // kappa*4 / 4 floored: twice(d)/2 is 2*kappa, floor(kappa) = floor(2kappa/2)
    auto fl = [](long long twice_of_2kappa) {
        long long twok = twice_of_2kappa / 2;  // 2*kappa, integer
        return twok >= 0 ? twok / 2 : -((-twok + 1) / 2);
    };
    auto factors = [&](int j, int k, long long n1, long long n2) {
        for (long long i = 1; i <= n1; ++i)
            mono_mul_var(M, {VarKind::Y, k, ysign, static_cast<int>((zeta(p, j, k) + HalfInt(2 * i - 1)).twice())}, -1);
        for (long long h = 1; h <= n2; ++h)
            mono_mul_var(M, {VarKind::Y, k, ysign, static_cast<int>((zeta(p, j, k - 1) + HalfInt(2 * h - 2)).twice())}, 1);
    };
    for (int k = 1; k <= n; ++k) {
        int ck = (k + 1) / 2;
        if (cls == WeightClass::Integral) {
            for (int j = 1; j <= ck; ++j) factors(j, k, fl(kappa1(j, k)), fl(kappa2(j, k)));
            continue;
        }
        if (z_form) {
            if (cls != WeightClass::HalfIntegral) throw std::domain_error("Z-form is for half-integral weights");
            if (k % 2 == 1)
                mono_mul_var(M, {VarKind::X, k, 1, static_cast<int>((zeta(p, ck, k + 1)).twice() - 3)}, -1);
            else
                mono_mul_var(M, {VarKind::X, k, 1, static_cast<int>((zeta(p, k / 2, k)).twice() - 5)}, 1);
            for (int j = 1; j <= ck; ++j) factors(j, k, fl(kappa1(j, k)), fl(kappa2(j, k)));
            continue;
        }
        for (int j = 1; j < ck; ++j) factors(j, k, fl(kappa1(j, k)), fl(kappa2(j, k)));
        if (cls == WeightClass::HalfIntegral)
            mono_mul_var(M, {VarKind::X, k, 1, 1}, -1);
        else  // sign alternates with the node parity
            mono_mul_var(M, {VarKind::Xt, k, k % 2 == 1 ? 1 : -1, 1}, -1);
        if (k % 2 == 1) {
            long long top = (p.m(ck, k + 1) - HalfInt::half()).as_integer();
            for (long long i = 1; i <= top; ++i) mono_mul_var(M, {VarKind::Y, k, ysign, static_cast<int>(4 * i)}, -1);
        } else {
            int j = k / 2;
            long long n1 = fl(kappa1(j, k));
            for (long long i = 1; i <= n1; ++i)
                mono_mul_var(M, {VarKind::Y, k, ysign, static_cast<int>((zeta(p, j, k) + HalfInt(2 * i - 1)).twice())}, -1);
            long long top = (p.m(j, k) - HalfInt::half()).as_integer();
            for (long long h = 1; h <= top; ++h) mono_mul_var(M, {VarKind::Y, k, ysign, static_cast<int>(2 * (2 * h - 1))}, 1);
        }
    }
    return M;
}

// product over boxes of Upsilon_{t, b q^{2c}} with the class-dependent shift and prefix
inline CharMonomial xi_tableau(const Tableau& t, int n, WeightClass cls) {
    CharMonomial M;
    int sign = cls == WeightClass::NonClassicalPlus ? -1 : 1;
    int shift = cls == WeightClass::Integral ? 0 : 1;
    for (std::size_t i = 0; i < t.rows.size(); ++i)
        for (std::size_t j = 0; j < t.rows[i].size(); ++j) {
            long long c = static_cast<long long>(j) - static_cast<long long>(i);
            M = mono_mul(M, upsilon(t.rows[i][j], sign, 2 * c + shift, n));
        }
    for (int k = 1; k <= n; ++k) {
        if (cls == WeightClass::HalfIntegral) mono_mul_var(M, {VarKind::X, k, 1, 1}, -1);
        if (cls == WeightClass::NonClassicalPlus) mono_mul_var(M, {VarKind::Xt, k, k % 2 == 1 ? 1 : -1, 1}, -1);
    }
    return M;
}

// ---------------------------------------------------------------------------
// characters

enum class CharMethod { gt_sum, orbit_sum, tableaux_sum, eigen_route, factored };

inline CharPolynomial character_gt(const Weight& w) {
    CharPolynomial P;
    for (auto& p : enumerate_patterns(w)) poly_add(P, xi_pattern(p, w.cls), 1);
    return P;
}

inline CharPolynomial character_eigen_from_top(int n, const std::vector<HalfInt>& top, PatternKind kind, WeightClass cls) {
    CharPolynomial P;
    for (auto& p : enumerate_from_top(n, top, kind)) poly_add(P, xi_eigen(p, cls), 1);
    return P;
}

inline CharPolynomial character_eigen(const Weight& w) {
    return character_eigen_from_top(w.n, w.entries, kind_of(w.cls), w.cls);
}

// non-classical patterns carry no flip action; each is its own orbit
inline CharPolynomial character_orbit(const Weight& w) {
    CharPolynomial P;
    auto ps = enumerate_patterns(w);
    if (w.nc()) {
        for (auto& p : ps) poly_add(P, xi_pattern(p, w.cls), 1);
        return P;
    }
    for (auto& o : orbit_decompose(ps)) poly_add(P, xi_pattern(o.standard, w.cls), o.size);
    return P;
}

inline CharPolynomial character_tableaux(const Weight& w) {
    Weight wt = shifted_weight(w);
    std::vector<int> shape;
    for (auto x : wt.entries) shape.push_back(static_cast<int>(x.as_integer()));
    CharPolynomial P;
    for (auto& t : enumerate_tableaux(shape, w.n)) {
        BigInt mult = 1;
        if (w.cls == WeightClass::Integral) mult <<= gamma(t, w.n);
        if (w.cls == WeightClass::HalfIntegral) mult <<= (w.n / 2);
        poly_add(P, xi_tableau(t, w.n, w.cls), mult);
    }
    return P;
}

// ---------------------------------------------------------------------------
// root factorization

struct AFactor {
    int node = 1;
    int sign = 1;
    long long k = 1;  // A_{node, sign q^k}
    auto operator<=>(const AFactor&) const = default;
    bool operator==(const AFactor&) const = default;
};

struct RootTerm {
    BigInt mult;
    std::vector<AFactor> factors;
    Tableau tableau;
};

struct RootFactorization {
    CharMonomial base;            // Xi(T_max)
    BigInt base_mult = 1;         // global factor
    std::vector<RootTerm> terms;  // one per tableau, T_max included with no factors
};

// T_max = tableau of the minimal pattern of the (shifted) integral weight
inline Tableau tableau_max(const Weight& w) { return pattern_to_tableau(sigma_min(shifted_weight(w))); }

inline RootFactorization root_factorization(const Weight& w) {
    Weight wt = shifted_weight(w);
    int n = w.n;
    Tableau tmax = tableau_max(w);
    int sign = w.nc() ? -1 : 1;
    long long off = w.cls == WeightClass::Integral ? -1 : 0;
    RootFactorization R;
    R.base = xi_tableau(tmax, n, w.cls);
    if (w.cls == WeightClass::HalfIntegral) R.base_mult = BigInt(1) << (n / 2);
    std::vector<int> shape;
    for (auto x : wt.entries) shape.push_back(static_cast<int>(x.as_integer()));
    for (auto& t : enumerate_tableaux(shape, n)) {
        RootTerm term;
        term.tableau = t;
        term.mult = w.cls == WeightClass::Integral ? (BigInt(1) << gamma(t, n)) : BigInt(1);
        for (auto& [cell, e] : excess_diagram(t, tmax)) {
            int tm = tmax.at(cell.first, cell.second);
            long long c = cell.second - cell.first;
            // lowering the entry step by step from its T_max value
            for (int kk = 0; kk < e; ++kk) term.factors.push_back({tm - kk, sign, tm + 2 * c - kk + off});
        }
        std::sort(term.factors.begin(), term.factors.end());
        R.terms.push_back(std::move(term));
    }
    // T_max first
    std::stable_sort(R.terms.begin(), R.terms.end(),
                     [](const RootTerm& x, const RootTerm& y) { return x.factors.size() < y.factors.size(); });
    return R;
}

inline CharPolynomial reassemble(const RootFactorization& R, int n) {
    CharPolynomial P;
    for (auto& t : R.terms) {
        CharMonomial M = R.base;
        for (auto& a : t.factors) M = mono_mul(M, a_monomial(a.node, a.sign, a.k, n));
        poly_add(P, M, t.mult * R.base_mult);
    }
    return P;
}

inline CharPolynomial boundary_qcharacter(const Weight& w, CharMethod method) {
    switch (method) {
        case CharMethod::gt_sum: return character_gt(w);
        case CharMethod::orbit_sum: return character_orbit(w);
        case CharMethod::tableaux_sum: return character_tableaux(w);
        case CharMethod::eigen_route: return character_eigen(w);
        case CharMethod::factored: return reassemble(root_factorization(w), w.n);
    }
    return {};
}

// ---------------------------------------------------------------------------
// monomial order

struct LeqResult {
    bool less_equal = false;
    std::vector<std::pair<AFactor, int>> certificate;  // A-factor and its multiplicity
};

// is M2 / M a product of nonnegative powers of A_{i, +-q^k}, k >= 1?
inline LeqResult monomial_leq(const CharMonomial& M, const CharMonomial& M2, int n) {
    CharMonomial R = mono_div(M2, M);
    LeqResult res;
    while (!R.empty()) {
        const CharVariable* top = nullptr;
        for (auto& [v, p] : R) {
            if (v.kind != VarKind::Y) return {};
            if (!top || v.exp2 > top->exp2) top = &v;
        }
        CharVariable v = *top;
        int p = R.at(v);
        long long K = v.exp2 / 2;
        if (p < 0 || K < 2) return {};
        AFactor a{v.node, v.sign, K - 1};
        res.certificate.push_back({a, p});
        R = mono_mul(R, mono_pow(a_monomial(a.node, a.sign, a.k, n), -p));
    }
    std::sort(res.certificate.begin(), res.certificate.end());
    res.less_equal = true;
    return res;
}

// ---------------------------------------------------------------------------
// highest and lowest monomials

inline CharMonomial xi_sigma0_formula(const Weight& w) {
    if (w.cls != WeightClass::Integral) throw std::domain_error("integral weights only");
    CharMonomial M;
    for (int i = 1; i <= w.rank(); ++i)
        for (long long j = 0; j < w.entries[i - 1].as_integer(); ++j) {
            M = mono_mul(M, Yv(2 * i - 1, 1, 2 * j + 1, -1));
            if (2 * i <= w.n) M = mono_mul(M, Yv(2 * i, 1, 2 * j));
        }
    return M;
}

// l_1 = lambda_r, l_i = lambda_{r-i+1} - lambda_{r-i+2}; m_i partial sums
inline CharMonomial xi_sigma_min_formula(const Weight& w) {
    Weight wt = shifted_weight(w);
    int n = w.n, r = w.rank(), fl = n / 2;
    int sign = w.nc() ? -1 : 1;
    long long shift = w.cls == WeightClass::Integral ? 0 : 1;
    std::vector<long long> lam;
    for (auto x : wt.entries) lam.push_back(x.as_integer());
    CharMonomial M;
    long long m = 0;
    for (int i = 1; i <= r; ++i) {
        long long li = i == 1 ? lam[r - 1] : lam[r - i] - lam[r - i + 1];
        for (long long j = 0; j < li; ++j) M = mono_mul(M, Yv(fl + i, sign, fl + i + 2 * (m + j) + shift, -1));
        m += li;
    }
    for (int k = 1; k <= n; ++k) {
        if (w.cls == WeightClass::HalfIntegral) mono_mul_var(M, {VarKind::X, k, 1, 1}, -1);
        if (w.nc()) mono_mul_var(M, {VarKind::Xt, k, k % 2 == 1 ? 1 : -1, 1}, -1);
    }
    return M;
}

// ---------------------------------------------------------------------------
// Drinfeld polynomials

struct DrinfeldData {
    // roots[k-1]: multiset of m with factor (1 - q^m a z); inverted[k-1]: Y (not Y^{-1}) orientation
    std::vector<std::vector<HalfInt>> P, Q;
    std::vector<bool> P_inverted;
};

namespace detail {
inline void read_roots(const CharMonomial& M, int n, std::vector<std::vector<HalfInt>>& roots, std::vector<bool>* inv) {
    roots.assign(n, {});
    if (inv) inv->assign(n, false);
    for (auto& [v, p] : M) {
        if (v.kind != VarKind::Y || v.sign != 1) throw std::logic_error("unexpected variable in Drinfeld data");
        for (int c = 0; c < std::abs(p); ++c) roots[v.node - 1].push_back(HalfInt::from_twice(v.exp2));
        if (inv && p > 0) (*inv)[v.node - 1] = true;
    }
}
}  // namespace detail

inline DrinfeldData drinfeld_polynomials(const Weight& w) {
    if (w.cls != WeightClass::Integral) throw std::domain_error("Drinfeld polynomials need an integral weight");
    DrinfeldData d;
    detail::read_roots(xi_eigen(sigma0(w), w.cls), w.n, d.P, &d.P_inverted);
    detail::read_roots(xi_eigen(sigma_min(w), w.cls), w.n, d.Q, nullptr);
    return d;
}

// P(qz)/P(q^-1 z) * P^dag(q^-1 z)/P^dag(qz), or its inverse
inline FactorProduct eigen_from_roots(const std::vector<HalfInt>& roots, bool inverted) {
    FactorProduct f;
    for (auto m : roots) {
        FactorProduct g;
        g.add(1, m + HalfInt(1), 1).add(1, -m - HalfInt(1), 1).add(1, m - HalfInt(1), -1).add(1, HalfInt(1) - m, -1);
        f *= inverted ? g.inverse() : g;
    }
    return f;
}

// ---------------------------------------------------------------------------
// rank two and fundamental representations

inline CharPolynomial rank2_closed_form(HalfInt lam, WeightClass cls) {
    CharPolynomial P;
    const int n = 2;
    if (cls == WeightClass::Integral) {
        if (!lam.is_integer() || lam < HalfInt(0)) throw std::invalid_argument("invalid rank-two weight");
        long long L = lam.as_integer();
        CharMonomial base;
        for (long long l = 1; l <= L; ++l) base = mono_mul(base, Yv(2, 1, 2 * l, -1));
        poly_add(P, base, 1);
        CharMonomial acc = base;
        for (long long r = 1; r <= L; ++r) {
            acc = mono_mul(acc, a_monomial(2, 1, 2 * r - 1, n));
            poly_add(P, acc, 2);
        }
        return P;
    }
    if (lam.is_integer() || lam < HalfInt(0)) throw std::invalid_argument("invalid rank-two weight");
    long long L = (lam - HalfInt::half()).as_integer();
    bool nc = cls == WeightClass::NonClassicalPlus;
    int s = nc ? -1 : 1;
    CharMonomial base;
    if (nc) {
        base = mono_mul(var(VarKind::Xt, 1, 1, 1, -1), var(VarKind::Xt, 2, -1, 1, -1));
    } else {
        base = mono_mul(var(VarKind::X, 1, 1, 1, -1), var(VarKind::X, 2, 1, 1, -1));
    }
    for (long long l = 1; l <= L; ++l) base = mono_mul(base, Yv(2, s, 2 * l + 1, -1));
    BigInt c = nc ? 1 : 2;
    poly_add(P, base, c);
    CharMonomial acc = base;
    for (long long r = 1; r <= L; ++r) {
        acc = mono_mul(acc, a_monomial(2, s, 2 * r, n));
        poly_add(P, acc, c);
    }
    return P;
}

// eigenvalue on v_r, i.e. the pattern with m_{1,2} = lambda - r
inline FactorProduct rank2_theta(HalfInt lam, long long r, int k) {
    HalfInt d = (lam - HalfInt(r)) * 2;  // 2(lambda - r)
    HalfInt one(1);
    FactorProduct f;
    if (k == 1) {
        f.add(1, d, 1).add(1, -d, 1).add(1, HalfInt(0), -2);
    } else {
        HalfInt l2 = lam * 2;
        f.add(1, one, 1).add(1, -one, 1).add(1, l2 + one, 1).add(1, -l2 - one, 1);
        f.add(1, d - one, -1).add(1, one - d, -1).add(1, l2 + one - HalfInt(2 * r), -1).add(1, HalfInt(2 * r) - one - l2, -1);
    }
    return f;
}

// single-column tableaux with entries j_1 < ... < j_i, j_k >= 2k-1
inline CharPolynomial fundamental_character(int n, int i) {
    CharPolynomial P;
    std::vector<int> js(i);
    std::function<void(int, int)> go = [&](int pos, int start) {
        if (pos == i) {
            CharMonomial M;
            int delta = 0;
            for (int k = 0; k < i; ++k) {
                M = mono_mul(M, upsilon(js[k], 1, -2 * k, n));
                if (js[k] == 2 * k + 1) ++delta;
            }
            poly_add(P, M, BigInt(1) << delta);
            return;
        }
        for (int v = std::max(start, 2 * pos + 1); v <= n; ++v) {
            js[pos] = v;
            go(pos + 1, v + 1);
        }
    };
    go(0, 1);
    return P;
}

inline CharPolynomial spin_character(int n) {
    CharMonomial M;
    for (int k = 1; k <= n; ++k) mono_mul_var(M, {VarKind::X, k, 1, 1}, -1);
    CharPolynomial P;
    poly_add(P, M, BigInt(1) << (n / 2));
    return P;
}

}  // namespace qsp
