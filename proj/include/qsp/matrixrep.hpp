#pragma once

#include "characters.hpp"
#include "patterns.hpp"
#include "qarith.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qsp {

using Mat = Eigen::MatrixXcd;

struct RepParams {
    cplx q{1.21, 0.0};
    cplx a{0.73, 0.0};
    std::optional<std::vector<int>> epsilons;  // eps_2 .. eps_{n+1}
    bool q_dot_as_printed = false;             // omit the leading i of the non-classical odd-node coefficient
};

struct MissingParameter : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// sparse export of a matrix in the GT basis
struct RepOperator {
    std::string label;
    int dim = 0;
    std::map<std::pair<int, int>, cplx> entries;

    static RepOperator from_dense(const Mat& m, std::string label) {
        RepOperator r;
        r.label = std::move(label);
        r.dim = static_cast<int>(m.rows());
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j)
                if (m(i, j) != cplx(0)) r.entries[{i, j}] = m(i, j);
        return r;
    }
    Mat dense() const {
        Mat m = Mat::Zero(dim, dim);
        for (auto& [ij, v] : entries) m(ij.first, ij.second) = v;
        return m;
    }
    double max_abs() const {
        double r = 0;
        for (auto& [ij, v] : entries) r = std::max(r, std::abs(v));
        return r;
    }
    double off_diagonal_mass() const {
        double r = 0;
        for (auto& [ij, v] : entries)
            if (ij.first != ij.second) r = std::max(r, std::abs(v));
        return r;
    }
};

inline double max_abs(const Mat& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

inline double off_diagonal_mass(const Mat& m) {
    double r = 0;
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            if (i != j) r = std::max(r, std::abs(m(i, j)));
    return r;
}

// ---------------------------------------------------------------------------
// GT basis

class GTModule {
public:
    explicit GTModule(const Weight& w) : weight_(w), basis_(enumerate_patterns(w)) {
        for (std::size_t i = 0; i < basis_.size(); ++i) index_[basis_[i]] = static_cast<int>(i);
    }
    const Weight& weight() const { return weight_; }
    int n() const { return weight_.n; }
    bool nc() const { return weight_.nc(); }
    int dim() const { return static_cast<int>(basis_.size()); }
    const std::vector<GTPattern>& basis() const { return basis_; }
    std::optional<int> index(const GTPattern& p) const {
        auto it = index_.find(p);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

private:
    Weight weight_;
    std::vector<GTPattern> basis_;
    std::map<GTPattern, int> index_;
};

using SparseVec = std::vector<std::pair<GTPattern, cplx>>;

namespace detail {

inline cplx br(cplx q, double x) { return qbracket(q, x); }
inline cplx brp(cplx q, double x) { return qbracket_plus(q, x); }

// l-coordinates of row j as doubles; empty for j < 2
inline std::vector<double> lrow(const GTPattern& p, int j) {
    std::vector<double> out;
    if (j < 2) return out;
    for (int i = 1; i <= j / 2; ++i) out.push_back(l_coord(p, i, j).to_double());
    return out;
}

inline GTPattern shifted(const GTPattern& p, int k, int j, int d) {
    GTPattern s = p;
    s.m(j, k) += HalfInt(d);
    return s;
}

struct Gik {
    cplx q;
    bool nc;
    bool q_dot_as_printed;

    // even node 2P, entry j
    cplx P(const GTPattern& p, int Pn, int j) const {
        auto l = lrow(p, 2 * Pn + 1), lp = lrow(p, 2 * Pn), lpp = lrow(p, 2 * Pn - 1);
        double x = lp[j - 1];
        cplx num = 1.0, den = 1.0;
        for (int r = 0; r < Pn; ++r) num *= br(q, l[r] + x) * br(q, std::abs(l[r] - x - 1));
        for (int r = 0; r < Pn - 1; ++r) num *= br(q, lpp[r] + x) * br(q, std::abs(lpp[r] - x - 1));
        for (int r = 0; r < Pn; ++r) {
            if (r == j - 1) continue;
            double y = lp[r];
            den *= br(q, y + x) * br(q, std::abs(y - x)) * br(q, y + x + 1) * br(q, std::abs(y - x - 1));
        }
        cplx pre = nc ? 1.0 / ((q - 1.0 / q) * (q - 1.0 / q) * br(q, x) * br(q, x + 1))
                      : 1.0 / (qbrace(q, x) * qbrace(q, x + 1));
        return cplx(0, 1) * std::sqrt(pre * num / den);
    }

    // odd node 2P-1, entry j
    cplx Q(const GTPattern& p, int Pn, int j) const {
        auto l = lrow(p, 2 * Pn), lp = lrow(p, 2 * Pn - 1), lpp = lrow(p, 2 * Pn - 2);
        double x = lp[j - 1];
        cplx num = 1.0, den = 1.0;
        for (int r = 0; r < Pn; ++r) num *= br(q, l[r] + x) * br(q, std::abs(l[r] - x));
        for (int r = 0; r < Pn - 1; ++r) num *= br(q, lpp[r] + x) * br(q, std::abs(lpp[r] - x));
        for (int r = 0; r < Pn - 1; ++r) {
            if (r == j - 1) continue;
            double y = lp[r];
            den *= br(q, y + x) * br(q, std::abs(y - x)) * br(q, y + x - 1) * br(q, std::abs(y - x - 1));
        }
        if (nc) {
            cplx bp = brp(q, x);
            cplx root = std::sqrt(-1.0 / (bp * bp * br(q, 2 * x + 1) * br(q, 2 * x - 1)) * num / den);
            return q_dot_as_printed ? root : cplx(0, 1) * root;
        }
        cplx bx = br(q, x);
        return cplx(0, 1) * std::sqrt(1.0 / (bx * bx * br(q, 2 * x + 1) * br(q, 2 * x - 1)) * num / den);
    }

    // diagonal coefficient at odd node 2P-1
    cplx R(const GTPattern& p, int Pn) const {
        auto b = [&](double x) { return nc ? brp(q, x) : br(q, x); };
        if (!nc && Pn >= 2 && std::abs(l_coord(p, Pn - 1, 2 * Pn - 1).to_double() - 1.0) < 1e-12) return 0.0;
        cplx v = 1.0;
        for (double x : lrow(p, 2 * Pn)) v *= b(x);
        for (double x : lrow(p, 2 * Pn - 2)) v *= b(x);
        for (double x : lrow(p, 2 * Pn - 1)) v /= b(x) * b(x - 1);
        return v;
    }

    // extra diagonal coefficient at even node 2P (non-classical, m_{P,2P} = 1/2)
    cplx S(const GTPattern& p, int Pn) const {
        cplx v(0, 1);
        for (double x : lrow(p, 2 * Pn + 1)) v *= br(q, x - 0.5);
        for (double x : lrow(p, 2 * Pn - 1)) v *= br(q, x - 0.5);
        auto mid = lrow(p, 2 * Pn);
        for (int r = 0; r < Pn - 1; ++r) v /= br(q, mid[r] + 0.5) * br(q, mid[r] - 0.5);
        return v;
    }
};

}  // namespace detail

// image of basis vector p under A_{k,s} as stated by the action theorems (s = 0 gives B_k)
inline SparseVec predicted_a_action(const GTModule& M, int k, int s, const GTPattern& p, const RepParams& par) {
    if (k < 1 || k > M.n()) throw std::out_of_range("node out of range");
    bool nc = M.nc();
    if (nc && (!par.epsilons || static_cast<int>(par.epsilons->size()) != M.n()))
        throw MissingParameter("non-classical module needs " + std::to_string(M.n()) + " epsilons");
    detail::Gik g{par.q, nc, par.q_dot_as_printed};
    cplx q = par.q, a = par.a;
    cplx fac = std::pow(nc ? -a : a, s);
    auto qz = [&](double e) { return std::pow(q, e); };
    SparseVec out;
    auto push = [&](const GTPattern& t, cplx v) {
        if (M.index(t)) out.push_back({t, v});
    };
    if (k % 2 == 0) {
        int P = k / 2;
        for (int j = 1; j <= P; ++j) {
            double z = zeta(p, j, k).to_double();
            GTPattern pu = detail::shifted(p, k, j, 1), pd = detail::shifted(p, k, j, -1);
            if (M.index(pu)) push(pu, fac * qz(s * z) * g.P(p, P, j));
            if (M.index(pd)) push(pd, -fac * qz(s * (2 - z)) * g.P(pd, P, j));
        }
        if (nc && p.m(P, k) == HalfInt::half())
            push(p, fac * static_cast<double>((*par.epsilons)[k - 1]) / (std::sqrt(q) - 1.0 / std::sqrt(q)) * g.S(p, P));
    } else {
        int P = (k + 1) / 2;
        for (int j = 1; j < P; ++j) {
            double z = zeta(p, j, k).to_double();
            GTPattern pu = detail::shifted(p, k, j, 1), pd = detail::shifted(p, k, j, -1);
            if (M.index(pu)) push(pu, fac * qz(s * z) * g.Q(p, P, j));
            if (M.index(pd)) push(pd, -fac * qz(s * (2 - z)) * g.Q(pd, P, j));
        }
        if (nc)
            push(p, std::pow(a, s) * static_cast<double>((*par.epsilons)[k - 1]) * g.R(p, P));
        else
            push(p, -std::pow(a, s) * g.R(p, P));
    }
    return out;
}

inline SparseVec b_action(const GTModule& M, int k, const GTPattern& p, const RepParams& par) {
    return predicted_a_action(M, k, 0, p, par);
}

inline Mat action_matrix(const GTModule& M, int k, int s, const RepParams& par) {
    Mat m = Mat::Zero(M.dim(), M.dim());
    for (int c = 0; c < M.dim(); ++c)
        for (auto& [t, v] : predicted_a_action(M, k, s, M.basis()[c], par)) m(*M.index(t), c) += v;
    return m;
}

inline Mat qcomm(const Mat& x, const Mat& y, cplx c) { return x * y - c * y * x; }
inline Mat comm(const Mat& x, const Mat& y) { return x * y - y * x; }
// x^2 y - [2] x y x + y x^2
inline Mat serre(const Mat& x, const Mat& y, cplx q) { return x * x * y - (q + 1.0 / q) * x * y * x + y * x * x; }

// x_1 .. x_m -> [x_1,[x_2,...,[x_{m-1},x_m]_q...]_q]_q
inline Mat nested_qcomm(const std::vector<Mat>& xs, cplx q) {
    Mat X = xs.back();
    for (int i = static_cast<int>(xs.size()) - 2; i >= 0; --i) X = qcomm(xs[i], X, q);
    return X;
}

// ---------------------------------------------------------------------------
// generator tower

struct Tower {
    int n = 0, dim = 0;
    int s_min = -1, s_max = 0, m_max = 1;
    RepParams params;
    std::map<int, Mat> B, H;
    std::map<std::pair<int, int>, Mat> A, Theta;

    const Mat& a_op(int k, int s) const {
        auto it = A.find({k, s});
        if (it == A.end()) throw std::out_of_range("tower lacks A_{" + std::to_string(k) + "," + std::to_string(s) + "}");
        return it->second;
    }
    // Theta_{k,m} with Theta_{k,m} = 0 for m < 0
    Mat theta(int k, int m) const {
        if (m < 0) return Mat::Zero(dim, dim);
        auto it = Theta.find({k, m});
        if (it == Theta.end())
            throw std::out_of_range("tower lacks Theta_{" + std::to_string(k) + "," + std::to_string(m) + "}");
        return it->second;
    }

    std::vector<RepOperator> operators() const {
        std::vector<RepOperator> out;
        for (auto& [k, m] : B) out.push_back(RepOperator::from_dense(m, "B_" + std::to_string(k)));
        for (auto& [ks, m] : A)
            out.push_back(RepOperator::from_dense(m, "A_{" + std::to_string(ks.first) + "," + std::to_string(ks.second) + "}"));
        for (auto& [k, m] : H) out.push_back(RepOperator::from_dense(m, "H_{" + std::to_string(k) + ",1}"));
        for (auto& [km, m] : Theta)
            out.push_back(
                RepOperator::from_dense(m, "Theta_{" + std::to_string(km.first) + "," + std::to_string(km.second) + "}"));
        return out;
    }
};

inline Mat eval_B0(const Tower& t) {
    std::vector<Mat> xs;
    for (int k = 1; k <= t.n; ++k) xs.push_back(t.B.at(k));
    cplx q = t.params.q;
    return t.params.a * std::pow(-q, -t.n) * nested_qcomm(xs, q);
}

// B's -> A_{k,-1}, A_{k,0} -> H_{k,1} -> A_{k,s} -> Theta_{k,m}
inline Tower build_generator_tower(const GTModule& M, const RepParams& par, int s_min, int s_max, int m_max) {
    if (s_min > -1 || s_max < 0) throw std::invalid_argument("s range must contain -1 and 0");
    if (m_max < 1) throw std::invalid_argument("m_max must be >= 1");
    Tower t;
    t.n = M.n();
    t.dim = M.dim();
    t.params = par;
    int smax_eff = std::max(s_max, m_max);
    t.s_min = s_min;
    t.s_max = smax_eff;
    t.m_max = m_max;
    cplx q = par.q, a = par.a;
    int n = t.n, d = t.dim;
    Mat I = Mat::Identity(d, d);
    for (int k = 1; k <= n; ++k) t.B[k] = action_matrix(M, k, 0, par);
    for (int k = 1; k <= n; ++k) t.A[{k, 0}] = t.B[k];
    t.A[{1, -1}] = t.B[1] / a;
    for (int j = 2; j <= n; ++j) t.A[{j, -1}] = qcomm(t.B[j - 1], qcomm(t.A[{j - 1, -1}], t.B[j], q), q) / q;
    for (int k = 1; k <= n; ++k) t.H[k] = -q * a * a * qcomm(t.A[{k, -1}], t.A[{k, 0}], 1.0 / (q * q));
    for (int s = s_min; s <= smax_eff; ++s) t.A[{1, s}] = std::pow(a, s) * t.B[1];
    for (int k = 2; k <= n; ++k) {
        const Mat& Hk = t.H[k - 1];
        for (int s = 0; s < smax_eff; ++s)
            t.A[{k, s + 1}] = -comm(Hk, t.A[{k, s}]) + a * a * t.A[{k, s - 1}];
        for (int s = -1; s > s_min; --s) t.A[{k, s - 1}] = (t.A[{k, s + 1}] + comm(Hk, t.A[{k, s}])) / (a * a);
    }
    // Theta-hat from A(z), then divide out the prefactor series
    cplx qq = q - 1.0 / q;
    for (int k = 1; k <= n; ++k) {
        int Mx = m_max;
        std::vector<Mat> W(Mx + 1, Mat::Zero(d, d)), Y(Mx + 1, Mat::Zero(d, d)), Th(Mx + 1);
        for (int r = 0; r <= Mx; ++r) {
            W[r] += qcomm(t.A[{k, -1}], t.A[{k, r}], 1.0 / (q * q));
            if (r + 1 <= Mx) W[r + 1] += -1.0 / (q * q) * qcomm(t.A[{k, 0}], t.A[{k, r}], q * q);
        }
        for (int dd = 0; dd <= Mx; ++dd)
            for (int tt = 0; dd + 1 + 2 * tt <= Mx; ++tt) Y[dd + 1 + 2 * tt] += std::pow(a, 2 * tt) * W[dd];
        for (int dd = 0; dd <= Mx; ++dd) Th[dd] = (dd == 0 ? I : Mat::Zero(d, d)) - q * qq * a * a * Y[dd];
        std::vector<cplx> c(Mx + 1, 0.0);
        cplx g = a * a / (q * q);
        for (int dd = 0; dd <= Mx; dd += 2) c[dd] = std::pow(g, dd / 2) - (dd >= 2 ? a * a * std::pow(g, dd / 2 - 1) : 0.0);
        for (int dd = 0; dd <= Mx; ++dd) {
            Mat T = Mat::Zero(d, d);
            for (int e = 0; e <= dd; ++e) T += c[e] * Th[dd - e];
            t.Theta[{k, dd}] = T / qq;
        }
    }
    return t;
}

// Taylor coefficients of the raw Theta_{k,m} eigenvalue on p
inline std::vector<cplx> predicted_theta_eigen_numeric(int k, const GTPattern& p, const RepParams& par, int m_max) {
    cplx q = par.q, a = par.a;
    auto th = factor_series(theta_eigenvalue_exact(p, k), m_max, q, a);
    std::vector<cplx> c(m_max + 1, 0.0), out(m_max + 1, 0.0);
    cplx g = a * a / (q * q);
    for (int d = 0; d <= m_max; d += 2) c[d] = std::pow(g, d / 2) - (d >= 2 ? a * a * std::pow(g, d / 2 - 1) : 0.0);
    for (int d = 0; d <= m_max; ++d) {
        for (int e = 0; e <= d; ++e) out[d] += c[e] * th[d - e];
        out[d] /= (q - 1.0 / q);
    }
    return out;
}

// ---------------------------------------------------------------------------
// verification

struct Check {
    std::string name;
    double residual = 0;
    bool pass = false;
};

struct VerifyReport {
    std::vector<Check> checks;
    double tol = 1e-9;
    bool all_pass() const {
        return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
    }
};

struct VerifyTolerances {
    double relation = 1e-9;  // degree <= 4 words
    double theta = 1e-8;     // tower and Theta comparisons
    double serre6 = 1e-7;    // the cubic Serre-type relation
};

inline VerifyReport verify_relations(const GTModule& M, const Tower& t, VerifyTolerances tol = {}) {
    VerifyReport rep;
    rep.tol = tol.relation;
    auto add = [&](const std::string& name, double res, double tl) { rep.checks.push_back({name, res, res <= tl}); };
    int n = t.n, d = t.dim;
    cplx q = t.params.q, a = t.params.a;
    cplx K = -q, C = a * a;
    const auto& B = t.B;
    Mat Z = Mat::Zero(d, d);
    int R = std::min({2, t.s_max - 1, -t.s_min - 1});
    if (R < 1) throw std::invalid_argument("tower needs s_min <= -2 and s_max >= 2");

    // finite coideal Serre relations
    {
        double r = 0;
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j) {
                if (i == j) continue;
                if (std::abs(i - j) == 1)
                    r = std::max(r, max_abs(serre(B.at(i), B.at(j), q) - B.at(j)));
                else
                    r = std::max(r, max_abs(comm(B.at(i), B.at(j))));
            }
        add("qsp_serre", r, tol.relation);
    }
    // evaluation map
    {
        Mat B0 = eval_B0(t);
        cplx K0 = a * a * std::pow(-q, -n);
        double r1 = 0, r2 = 0, r3 = 0;
        for (int i : {1, n}) {
            r1 = std::max(r1, max_abs(serre(B.at(i), B0, q) - B0));
            r2 = std::max(r2, max_abs(serre(B0, B.at(i), q) + K0 / q * B.at(i)));
        }
        for (int j = 2; j < n; ++j) r3 = std::max(r3, max_abs(comm(B0, B.at(j))));
        add("ev_serre_Bi_B0", r1, tol.relation);
        add("ev_serre_B0_Bj", r2, tol.relation);
        add("ev_commute_inner", r3, tol.relation);
    }
    // closed form of A_{i,1}
    if (t.s_max >= 1) {
        double r = 0;
        for (int i = 1; i <= n; ++i) {
            std::vector<Mat> down;
            for (int s = i; s >= 1; --s) down.push_back(B.at(s));
            std::vector<Mat> outer{nested_qcomm(down, q)};
            for (int s = 1; s < i; ++s) outer.push_back(B.at(s));
            double sg = i % 2 == 1 ? 1.0 : -1.0;
            Mat Cf = sg * a * std::pow(-q, -(i - 1)) * nested_qcomm(outer, q);
            r = std::max(r, max_abs(Cf - t.a_op(i, 1)));
        }
        add("closed_form_A_i1", r, tol.relation);
    }
    // horizontal recursion consistency
    {
        double r = 0;
        for (int j = 2; j <= n; ++j) r = std::max(r, max_abs(serre(B.at(j - 1), t.a_op(j, -1), q) - t.a_op(j, -1)));
        add("horizontal_serre", r, tol.relation);
    }
    // one-sided Onsager relation for (B_i, A_{i,+-1})
    {
        double r = 0;
        cplx b2 = q + 1.0 / q, b3 = q * q + 1.0 + 1.0 / (q * q);
        for (int i = 1; i <= n; ++i)
            for (int s : {-1, 1}) {
                if (s > t.s_max || s < t.s_min) continue;
                const Mat& x = B.at(i);
                const Mat& y = t.a_op(i, s);
                Mat lhs = x * x * x * y - b3 * x * x * y * x + b3 * x * y * x * x - y * x * x * x;
                Mat rhs = -K / q * b2 * b2 * comm(x, y);
                r = std::max(r, max_abs(lhs - rhs));
            }
        add("onsager", r, tol.relation);
    }
    // grel1: Cartan-type elements commute
    {
        double r = 0;
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j) {
                r = std::max(r, max_abs(comm(t.H.at(i), t.H.at(j))));
                for (int m1 = 0; m1 <= t.m_max; ++m1)
                    for (int m2 = 0; m2 <= t.m_max; ++m2) r = std::max(r, max_abs(comm(t.theta(i, m1), t.theta(j, m2))));
            }
        add("grel1", r, tol.theta);
    }
    double g2 = 0, g3 = 0, g4 = 0, g5 = 0;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            int aij = i == j ? 2 : (std::abs(i - j) == 1 ? -1 : 0);
            for (int r = -R; r <= R; ++r) {
                cplx brk = (std::pow(q, aij) - std::pow(q, -aij)) / (q - 1.0 / q);
                g2 = std::max(g2, max_abs(comm(t.H.at(i), t.a_op(j, r)) - brk * (t.a_op(j, r + 1) - C * t.a_op(j, r - 1))));
                for (int s = -R; s <= R; ++s) {
                    if (std::abs(i - j) > 1) g3 = std::max(g3, max_abs(comm(t.a_op(i, r), t.a_op(j, s))));
                    if (i != j) {
                        cplx qa = std::pow(q, -aij);
                        Mat L = qcomm(t.a_op(i, r), t.a_op(j, s + 1), qa);
                        Mat Rm = qa * qcomm(t.a_op(i, r + 1), t.a_op(j, s), 1.0 / qa);
                        g4 = std::max(g4, max_abs(L - Rm));
                    } else {
                        int need = std::max(s - r + 1, r - s + 1);
                        if (need > t.m_max) continue;
                        cplx q2 = 1.0 / (q * q), q4 = q2 * q2;
                        Mat L = qcomm(t.a_op(i, r), t.a_op(i, s + 1), q2) - q2 * qcomm(t.a_op(i, r + 1), t.a_op(i, s), q * q);
                        Mat Rm = q2 * K * std::pow(C, r) * t.theta(i, s - r + 1) -
                                 q4 * K * std::pow(C, r + 1) * t.theta(i, s - r - 1) +
                                 q2 * K * std::pow(C, s) * t.theta(i, r - s + 1) -
                                 q4 * K * std::pow(C, s + 1) * t.theta(i, r - s - 1);
                        g5 = std::max(g5, max_abs(L - Rm));
                    }
                }
            }
        }
    add("grel2", g2, tol.relation);
    add("grel3", g3, tol.theta);
    add("grel4", g4, tol.theta);
    add("grel5", g5, tol.theta);
    // grel6 on small modules
    if (d <= 50) {
        double g6 = 0;
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j) {
                if (std::abs(i - j) != 1) continue;
                for (int s = 0; s <= std::min(1, t.s_max); ++s)
                    for (int r1 = 0; r1 <= 1; ++r1)
                        for (int r2 = 0; r2 <= 1; ++r2) {
                            auto Ssym = [&](int x1, int x2) {
                                const Mat &X1 = t.a_op(i, x1), &X2 = t.a_op(i, x2), &Yj = t.a_op(j, s);
                                return Mat(X1 * X2 * Yj - (q + 1.0 / q) * X1 * Yj * X2 + Yj * X1 * X2);
                            };
                            auto Rf = [&](int x1, int x2) {
                                Mat tot = Mat::Zero(d, d);
                                for (int p = 0; p < 10; ++p) {
                                    int m = x2 - x1 - 2 * p - 1;
                                    if (m < 0) break;
                                    tot -= std::pow(q, 2 * p) * (q + 1.0 / q) * std::pow(C, p + 1) *
                                           qcomm(t.theta(i, m), t.a_op(j, s - 1), 1.0 / (q * q));
                                }
                                for (int p = 1; p < 10; ++p) {
                                    int m = x2 - x1 - 2 * p;
                                    if (m < 0) break;
                                    tot -= std::pow(q, 2 * p - 1) * (q + 1.0 / q) * std::pow(C, p) *
                                           qcomm(t.a_op(j, s), t.theta(i, m), 1.0 / (q * q));
                                }
                                tot -= qcomm(t.a_op(j, s), t.theta(i, x2 - x1), 1.0 / (q * q));
                                return Mat(K * std::pow(C, x1) * tot);
                            };
                            g6 = std::max(g6, max_abs(Ssym(r1, r2) + Ssym(r2, r1) - Rf(r1, r2) - Rf(r2, r1)));
                        }
            }
        add("grel6", g6, tol.serre6);
    }
    // tower against the action theorems
    {
        double r = 0;
        for (int k = 1; k <= n; ++k)
            for (int s = -R; s <= R; ++s) r = std::max(r, max_abs(t.a_op(k, s) - action_matrix(M, k, s, t.params)));
        add("tower_vs_theorem", r, tol.theta);
    }
    // Theta diagonal with predicted eigenvalues
    {
        int mm = std::min(4, t.m_max);
        double off = 0, eig = 0;
        for (int k = 1; k <= n; ++k) {
            for (int m = 0; m <= mm; ++m) off = std::max(off, off_diagonal_mass(t.theta(k, m)));
            for (int c = 0; c < d; ++c) {
                auto pr = predicted_theta_eigen_numeric(k, M.basis()[c], t.params, mm);
                for (int m = 0; m <= mm; ++m) eig = std::max(eig, std::abs(t.theta(k, m)(c, c) - pr[m]));
            }
        }
        add("theta_offdiagonal", off, tol.theta);
        add("theta_eigenvalues", eig, tol.theta);
    }
    (void)Z;
    return rep;
}

// Theta spectra across all sign choices; returns the max deviation from the first choice
inline double epsilon_spread(const GTModule& M, RepParams par, int m_max) {
    if (!M.nc()) return 0.0;
    int n = M.n();
    std::vector<std::vector<cplx>> ref;
    double worst = 0;
    for (int mask = 0; mask < (1 << n); ++mask) {
        std::vector<int> eps(n);
        for (int i = 0; i < n; ++i) eps[i] = (mask >> i) & 1 ? -1 : 1;
        par.epsilons = eps;
        Tower t = build_generator_tower(M, par, -1, m_max, m_max);
        std::vector<std::vector<cplx>> spec;
        for (int k = 1; k <= n; ++k)
            for (int m = 0; m <= m_max; ++m) {
                std::vector<cplx> dg;
                for (int c = 0; c < t.dim; ++c) dg.push_back(t.theta(k, m)(c, c));
                spec.push_back(dg);
            }
        if (mask == 0) {
            ref = spec;
            continue;
        }
        for (std::size_t x = 0; x < spec.size(); ++x)
            for (std::size_t y = 0; y < spec[x].size(); ++y) worst = std::max(worst, std::abs(spec[x][y] - ref[x][y]));
    }
    return worst;
}

}  // namespace qsp
