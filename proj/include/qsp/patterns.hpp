#pragma once

#include "qarith.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace qsp {

enum class WeightClass { Integral, HalfIntegral, NonClassicalPlus };
enum class PatternKind { Classical, NonClassical };

inline std::string to_string(WeightClass c) {
    switch (c) {
        case WeightClass::Integral: return "int";
        case WeightClass::HalfIntegral: return "half";
        case WeightClass::NonClassicalPlus: return "nc";
    }
    return "?";
}

inline PatternKind kind_of(WeightClass c) {
    return c == WeightClass::NonClassicalPlus ? PatternKind::NonClassical : PatternKind::Classical;
}

struct Weight {
    int n = 2;
    std::vector<HalfInt> entries;  // lambda_1 >= ... >= lambda_r >= 0, r = ceil(n/2)
    WeightClass cls = WeightClass::Integral;

    int rank() const { return (n + 1) / 2; }
    bool nc() const { return cls == WeightClass::NonClassicalPlus; }
    bool operator==(const Weight&) const = default;

    // validates and pads with zeros (integral) up to ceil(n/2) entries
    static Weight make(int n, std::vector<HalfInt> entries, WeightClass cls) {
        if (n < 2) throw std::invalid_argument("n must be >= 2");
        int r = (n + 1) / 2;
        if (static_cast<int>(entries.size()) > r) {
            for (std::size_t i = r; i < entries.size(); ++i)
                if (entries[i] != HalfInt(0)) throw std::invalid_argument("too many nonzero weight entries");
            entries.resize(r);
        }
        if (static_cast<int>(entries.size()) < r) {
            if (cls != WeightClass::Integral)
                throw std::invalid_argument("weight needs " + std::to_string(r) + " entries");
            entries.resize(r, HalfInt(0));
        }
        for (std::size_t i = 0; i < entries.size(); ++i) {
            const HalfInt& e = entries[i];
            bool integral = e.is_integer();
            if (cls == WeightClass::Integral && !integral)
                throw std::invalid_argument("entry " + e.str() + " is not an integer");
            if (cls != WeightClass::Integral && integral)
                throw std::invalid_argument("entry " + e.str() + " is not a half-odd integer");
            if (e < HalfInt(0)) throw std::invalid_argument("entry " + e.str() + " is negative");
            if (i > 0 && entries[i - 1] < e) throw std::invalid_argument("weight is not decreasing");
        }
        return Weight{n, std::move(entries), cls};
    }

    std::string str() const {
        std::string s = "(";
        for (std::size_t i = 0; i < entries.size(); ++i) s += (i ? "," : "") + entries[i].str();
        return s + ")";
    }
};

// rows[j] holds m_{1,j} .. m_{floor(j/2),j} for j = 2..n+1; rows[0], rows[1] unused
struct GTPattern {
    int n = 0;
    std::vector<std::vector<HalfInt>> rows;
    PatternKind kind = PatternKind::Classical;

    HalfInt m(int i, int j) const { return rows.at(j).at(i - 1); }
    HalfInt& m(int i, int j) { return rows.at(j).at(i - 1); }
    const std::vector<HalfInt>& row(int j) const { return rows.at(j); }

    bool operator==(const GTPattern& o) const { return n == o.n && kind == o.kind && rows == o.rows; }
    // top to bottom, left to right
    bool lex_less(const GTPattern& o) const {
        for (int j = n + 1; j >= 2; --j) {
            if (rows[j] != o.rows[j]) return rows[j] < o.rows[j];
        }
        return false;
    }
    bool operator<(const GTPattern& o) const {
        if (n != o.n) return n < o.n;
        if (kind != o.kind) return kind < o.kind;
        return lex_less(o);
    }

    std::string str() const {
        std::string s;
        for (int j = n + 1; j >= 2; --j) {
            s += j == n + 1 ? "[" : " | ";
            for (std::size_t i = 0; i < rows[j].size(); ++i) s += (i ? "," : "") + rows[j][i].str();
        }
        return s + "]";
    }
};

// admissible values for row j given row j+1 (up); ranges per entry, inclusive
inline std::vector<std::pair<HalfInt, HalfInt>> row_ranges(const std::vector<HalfInt>& up, int j, PatternKind kind) {
    int len = j / 2;
    std::vector<std::pair<HalfInt, HalfInt>> out;
    for (int i = 1; i <= len; ++i) {
        HalfInt hi = up[i - 1], lo;
        if (j % 2 == 0) {
            if (i < len) lo = up[i];
            else lo = kind == PatternKind::NonClassical ? HalfInt::half() : -up[i - 1];
        } else {
            lo = i < static_cast<int>(up.size()) ? abs(up[i]) : HalfInt(0);
        }
        out.emplace_back(lo, hi);
    }
    return out;
}

inline std::optional<std::string> top_row_error(int n, const std::vector<HalfInt>& top, PatternKind kind) {
    if (n < 2) return "n must be >= 2";
    if (static_cast<int>(top.size()) != (n + 1) / 2) return "top row must have ceil(n/2) entries";
    bool integral = top[0].is_integer();
    for (std::size_t i = 0; i < top.size(); ++i) {
        if (top[i].is_integer() != integral) return "mixed integral and half-integral entries";
        if (i > 0 && top[i - 1] < top[i] && !(i + 1 == top.size() && (n + 1) % 2 == 0)) return "top row not decreasing";
    }
    if (kind == PatternKind::NonClassical && integral) return "non-classical top row must be half-integral";
    if ((n + 1) % 2 == 0 && top.size() >= 2 && top[top.size() - 2] < abs(top.back())) return "top row violates |last| constraint";
    if ((n + 1) % 2 == 1 && top.back() < HalfInt(0)) return "negative last entry in odd top row";
    if (kind == PatternKind::NonClassical && top.back() < HalfInt::half()) return "non-classical entries must be >= 1/2";
    return std::nullopt;
}

inline std::optional<std::string> validation_error(const GTPattern& p) {
    if (p.n < 2 || static_cast<int>(p.rows.size()) != p.n + 2) return "wrong number of rows";
    for (int j = 2; j <= p.n + 1; ++j)
        if (static_cast<int>(p.rows[j].size()) != j / 2) return "row " + std::to_string(j) + " has wrong length";
    bool integral = p.rows[p.n + 1][0].is_integer();
    for (int j = 2; j <= p.n + 1; ++j)
        for (auto& x : p.rows[j])
            if (x.is_integer() != integral) return "mixed integral and half-integral entries";
    if (p.kind == PatternKind::NonClassical && integral) return "non-classical pattern with integral entries";
    if (auto err = top_row_error(p.n, p.rows[p.n + 1], p.kind)) return err;
    if (p.kind == PatternKind::NonClassical)
        for (int j = 2; j <= p.n + 1; j += 2)
            if (p.rows[j].back() < HalfInt::half()) return "non-classical first column below 1/2";
    for (int j = p.n; j >= 2; --j) {
        auto rg = row_ranges(p.rows[j + 1], j, p.kind);
        for (std::size_t i = 0; i < rg.size(); ++i) {
            HalfInt x = p.rows[j][i];
            if (x < rg[i].first || rg[i].second < x)
                return "interlacing fails at m_{" + std::to_string(i + 1) + "," + std::to_string(j) + "}";
        }
    }
    return std::nullopt;
}

inline bool is_valid(const GTPattern& p) { return !validation_error(p).has_value(); }

// all patterns with the given top row (row n+1), sorted lexicographically descending
inline std::vector<GTPattern> enumerate_from_top(int n, const std::vector<HalfInt>& top, PatternKind kind) {
    GTPattern base;
    base.n = n;
    base.kind = kind;
    base.rows.assign(n + 2, {});
    base.rows[n + 1] = top;
    if (auto err = top_row_error(n, top, kind)) throw std::invalid_argument("invalid top row: " + *err);

    std::vector<GTPattern> out;
    GTPattern cur = base;
    std::function<void(int)> fill_row;
    std::function<void(int, std::size_t, const std::vector<std::pair<HalfInt, HalfInt>>&)> fill_entry;
    fill_entry = [&](int j, std::size_t i, const std::vector<std::pair<HalfInt, HalfInt>>& rg) {
        if (i == rg.size()) {
            fill_row(j - 1);
            return;
        }
        for (HalfInt v = rg[i].second; v >= rg[i].first; v -= HalfInt(1)) {
            cur.rows[j][i] = v;
            fill_entry(j, i + 1, rg);
        }
    };
    fill_row = [&](int j) {
        if (j < 2) {
            out.push_back(cur);
            return;
        }
        auto rg = row_ranges(cur.rows[j + 1], j, kind);
        cur.rows[j].assign(rg.size(), HalfInt(0));
        fill_entry(j, 0, rg);
    };
    fill_row(n);
    // depth-first with descending values already yields descending lexicographic order
    return out;
}

inline std::vector<GTPattern> enumerate_patterns(const Weight& w) {
    return enumerate_from_top(w.n, w.entries, kind_of(w.cls));
}

// one uniformly-per-entry random pattern (not uniform over the set)
template <class RNG>
GTPattern random_pattern(int n, const std::vector<HalfInt>& top, PatternKind kind, RNG& rng) {
    GTPattern p;
    p.n = n;
    p.kind = kind;
    p.rows.assign(n + 2, {});
    p.rows[n + 1] = top;
    for (int j = n; j >= 2; --j) {
        auto rg = row_ranges(p.rows[j + 1], j, kind);
        for (auto& [lo, hi] : rg) {
            long long span = (hi - lo).twice() / 2;
            std::uniform_int_distribution<long long> d(0, span);
            p.rows[j].push_back(lo + HalfInt(d(rng)));
        }
    }
    return p;
}

// ---------------------------------------------------------------------------
// coordinates

// l_{i,j} = m_{i,j} + ceil(j/2) - i
inline HalfInt l_coord(const GTPattern& p, int i, int j) { return p.m(i, j) + HalfInt((j + 1) / 2 - i); }

// zeta_{i,k}; with conventions zeta_{p,2p-1} = 0 and zeta_{p,2p-2} = -1 when allowed
inline HalfInt zeta(const GTPattern& p, int i, int k, bool conventions = true) {
    if (k >= 2 && i >= 1 && i <= k / 2) {
        HalfInt l2 = l_coord(p, i, k) * 2;
        return k % 2 == 0 ? l2 + HalfInt(1) : l2;
    }
    if (conventions) {
        if (k % 2 == 1 && i == (k + 1) / 2) return HalfInt(0);
        if (k % 2 == 0 && i == k / 2 + 1) return HalfInt(-1);
    }
    throw std::out_of_range("zeta index (" + std::to_string(i) + "," + std::to_string(k) + ") out of range");
}

struct Coordinates {
    HalfInt l, zeta;
};

inline Coordinates coordinates(const GTPattern& p, int i, int j) {
    if (j < 2 || j > p.n + 1 || i < 1 || i > j / 2) throw std::out_of_range("no entry m_{i,j}");
    return {l_coord(p, i, j), zeta(p, i, j, false)};
}

// ---------------------------------------------------------------------------
// sign-flip orbits

inline bool is_standard(const GTPattern& p) {
    for (int j = 2; j <= p.n + 1; j += 2)
        if (p.rows[j].back() < HalfInt(0)) return false;
    return true;
}

inline GTPattern standardize(const GTPattern& p) {
    GTPattern s = p;
    for (int j = 2; j <= p.n; j += 2) s.rows[j].back() = abs(s.rows[j].back());
    return s;
}

struct Orbit {
    GTPattern standard;
    long long size = 1;
};

inline std::vector<Orbit> orbit_decompose(const std::vector<GTPattern>& ps) {
    std::map<GTPattern, long long> count;
    for (auto& p : ps) {
        if (p.kind != PatternKind::Classical) throw std::domain_error("sign-flip action needs classical patterns");
        count[standardize(p)] += 1;
    }
    std::vector<Orbit> out;
    for (auto& [s, c] : count) {
        long long size = 1;
        for (int j = 2; j <= s.n; j += 2)
            if (s.rows[j].back() != HalfInt(0)) size *= 2;
        out.push_back({s, size});
    }
    std::sort(out.begin(), out.end(), [](const Orbit& x, const Orbit& y) { return y.standard.lex_less(x.standard); });
    return out;
}

// ---------------------------------------------------------------------------
// tableaux

struct Tableau {
    std::vector<std::vector<int>> rows;

    std::vector<int> shape() const {
        std::vector<int> s;
        for (auto& r : rows) s.push_back(static_cast<int>(r.size()));
        return s;
    }
    bool empty() const { return rows.empty(); }
    int at(int i, int j) const { return rows.at(i - 1).at(j - 1); }
    bool operator==(const Tableau&) const = default;
    bool operator<(const Tableau& o) const { return rows < o.rows; }

    std::string str() const {
        std::string s = "[";
        for (std::size_t i = 0; i < rows.size(); ++i) {
            s += i ? ",[" : "[";
            for (std::size_t j = 0; j < rows[i].size(); ++j) s += (j ? "," : "") + std::to_string(rows[i][j]);
            s += "]";
        }
        return s + "]";
    }
};

inline bool is_valid_tableau(const Tableau& t, int n) {
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        const auto& r = t.rows[i];
        if (r.empty()) return false;
        if (i > 0 && r.size() > t.rows[i - 1].size()) return false;
        for (std::size_t j = 0; j < r.size(); ++j) {
            int v = r[j];
            if (v < static_cast<int>(2 * (i + 1) - 1) || v > n) return false;
            if (j > 0 && r[j - 1] > v) return false;
            if (i > 0 && t.rows[i - 1][j] >= v) return false;
        }
    }
    return true;
}

// integral standard pattern -> tableau; entry k fills lambda^(k) / lambda^(k-1), lambda^(k) = row k+1
inline Tableau pattern_to_tableau(const GTPattern& p) {
    if (p.kind != PatternKind::Classical || !p.rows[p.n + 1][0].is_integer())
        throw std::domain_error("tableau bijection needs an integral classical pattern");
    if (!is_standard(p)) throw std::domain_error("pattern is not standard");
    int r = (p.n + 1) / 2;
    std::vector<std::vector<int>> rows(r);
    std::vector<long long> prev(r, 0);
    for (int k = 1; k <= p.n; ++k) {
        const auto& lam = p.rows[k + 1];
        for (std::size_t i = 0; i < lam.size(); ++i) {
            long long v = lam[i].as_integer();
            for (long long c = prev[i]; c < v; ++c) rows[i].push_back(k);
            prev[i] = v;
        }
    }
    while (!rows.empty() && rows.back().empty()) rows.pop_back();
    return Tableau{rows};
}

inline GTPattern tableau_to_pattern(const Tableau& t, int n) {
    if (!is_valid_tableau(t, n)) throw std::domain_error("invalid tableau");
    int r = (n + 1) / 2;
    if (static_cast<int>(t.rows.size()) > r) throw std::domain_error("tableau has too many rows");
    GTPattern p;
    p.n = n;
    p.kind = PatternKind::Classical;
    p.rows.assign(n + 2, {});
    for (int k = 1; k <= n; ++k) {
        int len = (k + 1) / 2;
        for (int i = 0; i < len; ++i) {
            long long c = 0;
            if (i < static_cast<int>(t.rows.size()))
                for (int v : t.rows[i]) c += v <= k ? 1 : 0;
            p.rows[k + 1].push_back(HalfInt(c));
        }
    }
    return p;
}

// uniform shift of every entry (half-integral patterns <-> integral ones)
inline GTPattern shift_pattern(const GTPattern& p, HalfInt d, PatternKind kind) {
    GTPattern s = p;
    s.kind = kind;
    for (int j = 2; j <= p.n + 1; ++j)
        for (auto& x : s.rows[j]) x += d;
    return s;
}

// rows k <= floor(n/2) whose first entry is 2k-1: the rows carrying a sign flip
inline int gamma(const Tableau& t, int n) {
    int g = 0;
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        int k = static_cast<int>(i) + 1;
        if (2 * k <= n && t.rows[i].front() == 2 * k - 1) ++g;
    }
    return g;
}

// SST_n(shape) by direct backtracking, row-major
inline std::vector<Tableau> enumerate_tableaux(const std::vector<int>& shape, int n) {
    std::vector<int> sh;
    for (int s : shape)
        if (s > 0) sh.push_back(s);
    std::vector<Tableau> out;
    Tableau cur;
    for (int s : sh) cur.rows.push_back(std::vector<int>(s, 0));
    std::function<void(std::size_t, std::size_t)> go = [&](std::size_t i, std::size_t j) {
        if (i == sh.size()) {
            out.push_back(cur);
            return;
        }
        if (j == static_cast<std::size_t>(sh[i])) {
            go(i + 1, 0);
            return;
        }
        int lo = static_cast<int>(2 * i + 1);
        if (j > 0) lo = std::max(lo, cur.rows[i][j - 1]);
        if (i > 0) lo = std::max(lo, cur.rows[i - 1][j] + 1);
        for (int v = lo; v <= n; ++v) {
            cur.rows[i][j] = v;
            go(i, j + 1);
        }
    };
    go(0, 0);
    std::sort(out.begin(), out.end());
    return out;
}

using ExcessDiagram = std::map<std::pair<int, int>, int>;

inline ExcessDiagram excess_diagram(const Tableau& t, const Tableau& tmax) {
    if (t.shape() != tmax.shape()) throw std::invalid_argument("shapes differ");
    ExcessDiagram e;
    for (std::size_t i = 0; i < t.rows.size(); ++i)
        for (std::size_t j = 0; j < t.rows[i].size(); ++j) {
            int d = tmax.rows[i][j] - t.rows[i][j];
            if (d < 0) throw std::invalid_argument("tableau exceeds T_max");
            if (d > 0) e[{static_cast<int>(i) + 1, static_cast<int>(j) + 1}] = d;
        }
    return e;
}

// ---------------------------------------------------------------------------
// special patterns

inline GTPattern sigma0_from_top(int n, const std::vector<HalfInt>& top, PatternKind kind) {
    GTPattern p;
    p.n = n;
    p.kind = kind;
    p.rows.assign(n + 2, {});
    for (int j = 2; j <= n + 1; ++j)
        for (int i = 1; i <= j / 2; ++i) p.rows[j].push_back(top[i - 1]);
    return p;
}

inline GTPattern sigma0(const Weight& w) { return sigma0_from_top(w.n, w.entries, kind_of(w.cls)); }

// m_{i,j} = lambda_{i + n + 1 - j}, zero past the end
inline GTPattern sigma_min(const Weight& w) {
    if (w.cls != WeightClass::Integral) throw std::domain_error("minimal pattern defined for integral weights");
    int n = w.n, r = w.rank();
    GTPattern p;
    p.n = n;
    p.kind = PatternKind::Classical;
    p.rows.assign(n + 2, {});
    for (int j = 2; j <= n + 1; ++j)
        for (int i = 1; i <= j / 2; ++i) {
            int idx = i + (n + 1 - j);
            p.rows[j].push_back(idx <= r ? abs(w.entries[idx - 1]) : HalfInt(0));
        }
    return p;
}

// integral weight lambda - 1/2 for half-integral classes
inline Weight shifted_weight(const Weight& w) {
    if (w.cls == WeightClass::Integral) return w;
    std::vector<HalfInt> e;
    for (auto x : w.entries) e.push_back(x - HalfInt::half());
    return Weight::make(w.n, e, WeightClass::Integral);
}

// ---------------------------------------------------------------------------
// Weyl dimension of the so_{n+1} module (type B for even n, D for odd n)

inline BigInt weyl_dim_from_top(int n, const std::vector<HalfInt>& top) {
    int r = (n + 1) / 2;
    bool typeB = n % 2 == 0;
    std::vector<Rational> rho(r), l(r);
    for (int i = 0; i < r; ++i) {
        rho[i] = typeB ? Rational(2 * (r - i) - 1, 2) : Rational(r - i - 1);
        l[i] = Rational(top[i].twice(), 2) + rho[i];
    }
    Rational d = 1;
    for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j) d *= (l[i] * l[i] - l[j] * l[j]) / (rho[i] * rho[i] - rho[j] * rho[j]);
    if (typeB)
        for (int i = 0; i < r; ++i) d *= l[i] / rho[i];
    if (boost::multiprecision::denominator(d) != 1) throw std::logic_error("non-integral Weyl dimension");
    return boost::multiprecision::numerator(d);
}

inline BigInt weyl_dim(const Weight& w) { return weyl_dim_from_top(w.n, w.entries); }

// number of basis patterns predicted from the Weyl dimension
inline BigInt expected_pattern_count(const Weight& w) {
    BigInt d = weyl_dim(w);
    if (w.nc()) d >>= (w.n / 2);
    return d;
}

}  // namespace qsp
