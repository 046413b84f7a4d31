#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <complex>
#include <compare>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace qsp {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using cplx = std::complex<double>;

// m in (1/2)Z, stored as 2m
class HalfInt {
public:
    constexpr HalfInt() = default;
    constexpr HalfInt(long long integer) : twice_(2 * integer) {}
    static constexpr HalfInt from_twice(long long t) {
        HalfInt h;
        h.twice_ = t;
        return h;
    }
    static constexpr HalfInt half() { return from_twice(1); }

    constexpr long long twice() const { return twice_; }
    constexpr bool is_integer() const { return twice_ % 2 == 0; }
    // caller guarantees is_integer()
    constexpr long long as_integer() const { return twice_ / 2; }
    // floor(m)
    constexpr long long floor() const {
        return twice_ >= 0 ? twice_ / 2 : -((-twice_ + 1) / 2);
    }
    double to_double() const { return static_cast<double>(twice_) / 2.0; }

    constexpr HalfInt operator-() const { return from_twice(-twice_); }
    constexpr HalfInt operator+(HalfInt o) const { return from_twice(twice_ + o.twice_); }
    constexpr HalfInt operator-(HalfInt o) const { return from_twice(twice_ - o.twice_); }
    constexpr HalfInt operator*(long long k) const { return from_twice(twice_ * k); }
    constexpr HalfInt& operator+=(HalfInt o) { twice_ += o.twice_; return *this; }
    constexpr HalfInt& operator-=(HalfInt o) { twice_ -= o.twice_; return *this; }
    constexpr auto operator<=>(const HalfInt&) const = default;
    constexpr bool operator==(const HalfInt&) const = default;

    std::string str() const {
        if (is_integer()) return std::to_string(twice_ / 2);
        return std::to_string(twice_) + "/2";
    }

private:
    long long twice_ = 0;
};

constexpr HalfInt abs(HalfInt h) { return h.twice() < 0 ? -h : h; }

// parses "k", "-k", "k/2"
inline HalfInt parse_halfint(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return HalfInt(std::stoll(s));
        if (s.substr(slash + 1) != "2") throw std::invalid_argument("denominator must be 2");
        return HalfInt::from_twice(std::stoll(s.substr(0, slash)));
    } catch (const std::logic_error&) {
        throw std::invalid_argument("not a half-integer: '" + s + "'");
    }
}

// ---------------------------------------------------------------------------
// Scalar: exact rational or complex double, never mixed

class Scalar {
public:
    Scalar() : v_(Rational(0)) {}
    Scalar(Rational r) : v_(std::move(r)) {}
    Scalar(cplx z) : v_(z) {}
    static Scalar exact(long long num, long long den = 1) { return Scalar(Rational(num, den)); }
    static Scalar numeric(double re, double im = 0.0) { return Scalar(cplx(re, im)); }

    bool is_exact() const { return std::holds_alternative<Rational>(v_); }
    const Rational& rational() const { return std::get<Rational>(v_); }
    cplx complex() const {
        if (is_exact()) return cplx(static_cast<double>(rational()), 0.0);
        return std::get<cplx>(v_);
    }

    Scalar operator+(const Scalar& o) const { return bin(o, [](auto a, auto b) { return a + b; }); }
    Scalar operator-(const Scalar& o) const { return bin(o, [](auto a, auto b) { return a - b; }); }
    Scalar operator*(const Scalar& o) const { return bin(o, [](auto a, auto b) { return a * b; }); }
    Scalar operator/(const Scalar& o) const {
        if (o.is_zero()) throw std::domain_error("division by zero scalar");
        return bin(o, [](auto a, auto b) { return a / b; });
    }
    Scalar operator-() const {
        if (is_exact()) return Scalar(Rational(-rational()));
        return Scalar(-std::get<cplx>(v_));
    }
    bool is_zero() const {
        if (is_exact()) return rational() == 0;
        return std::get<cplx>(v_) == cplx(0.0, 0.0);
    }
    bool operator==(const Scalar& o) const {
        if (is_exact() != o.is_exact()) throw std::domain_error("mixed scalar modes");
        if (is_exact()) return rational() == o.rational();
        return std::get<cplx>(v_) == std::get<cplx>(o.v_);
    }

    // q^k for half-integer k; exact mode only for integer k
    Scalar pow(HalfInt k) const {
        if (is_exact()) {
            if (!k.is_integer()) throw std::domain_error("exact scalar has no chosen square root");
            if (rational() == 0) throw std::domain_error("zero to a power");
            long long e = k.as_integer();
            Rational base = e >= 0 ? rational() : Rational(1) / rational();
            Rational out = 1;
            for (long long i = 0; i < (e >= 0 ? e : -e); ++i) out *= base;
            return Scalar(out);
        }
        return Scalar(std::pow(std::get<cplx>(v_), k.to_double()));
    }

private:
    template <class F>
    Scalar bin(const Scalar& o, F f) const {
        if (is_exact() != o.is_exact()) throw std::domain_error("mixed scalar modes");
        if (is_exact()) return Scalar(Rational(f(rational(), o.rational())));
        return Scalar(cplx(f(std::get<cplx>(v_), std::get<cplx>(o.v_))));
    }
    std::variant<Rational, cplx> v_;
};

enum class QSymbol { bracket, brace, plus };

// [k] = (q^k - q^-k)/(q - q^-1), {k} = q^k + q^-k, [k]_+ = i(q^k + q^-k)/(q - q^-1)
inline Scalar q_symbol(QSymbol kind, HalfInt k, const Scalar& q) {
    if (q.is_zero()) throw std::domain_error("q = 0");
    if (q.is_exact() && (q.rational() == 1 || q.rational() == -1))
        throw std::domain_error("q = +-1 in exact mode");
    if (kind == QSymbol::plus && q.is_exact())
        throw std::domain_error("[k]_+ needs i; use numeric mode");
    Scalar qk = q.pow(k), qmk = q.pow(-k);
    Scalar d = q - q.pow(HalfInt(-1));
    switch (kind) {
        case QSymbol::bracket: return (qk - qmk) / d;
        case QSymbol::brace: return qk + qmk;
        case QSymbol::plus: return Scalar(cplx(0, 1)) * (qk + qmk) / d;
    }
    return Scalar();
}

// numeric shortcuts used on hot paths
inline cplx qpow(cplx q, double x) { return std::pow(q, x); }
inline cplx qbracket(cplx q, double x) { return (qpow(q, x) - qpow(q, -x)) / (q - 1.0 / q); }
inline cplx qbracket_plus(cplx q, double x) {
    return cplx(0, 1) * (qpow(q, x) + qpow(q, -x)) / (q - 1.0 / q);
}
inline cplx qbrace(cplx q, double x) { return qpow(q, x) + qpow(q, -x); }

// ---------------------------------------------------------------------------
// Q(sqrt(d)) with rational d: a + b*sqrt(d). Used for exact q^{1/2}.

class QuadRational {
public:
    QuadRational() = default;
    QuadRational(Rational a, Rational b, Rational d) : a_(std::move(a)), b_(std::move(b)), d_(std::move(d)) {}

    const Rational& a() const { return a_; }
    const Rational& b() const { return b_; }
    const Rational& d() const { return d_; }

    QuadRational operator+(const QuadRational& o) const { return {a_ + o.a_, b_ + o.b_, pick(o)}; }
    QuadRational operator-(const QuadRational& o) const { return {a_ - o.a_, b_ - o.b_, pick(o)}; }
    QuadRational operator-() const { return {-a_, -b_, d_}; }
    QuadRational operator*(const QuadRational& o) const {
        Rational d = pick(o);
        return {a_ * o.a_ + d * b_ * o.b_, a_ * o.b_ + b_ * o.a_, d};
    }
    bool is_zero() const { return a_ == 0 && b_ == 0; }
    QuadRational inverse() const {
        Rational n = a_ * a_ - d_ * b_ * b_;
        if (n == 0) throw std::domain_error("inverse of zero in quadratic field");
        return {a_ / n, -b_ / n, d_};
    }
    QuadRational operator/(const QuadRational& o) const { return *this * o.inverse(); }
    bool operator==(const QuadRational& o) const { return a_ == o.a_ && b_ == o.b_; }

private:
    // d == 0 marks a plain rational constant that adopts the other operand's field
    Rational pick(const QuadRational& o) const {
        if (d_ == 0) return o.d_;
        if (o.d_ != 0 && o.d_ != d_) throw std::domain_error("mixed quadratic fields");
        return d_;
    }
    Rational a_ = 0, b_ = 0, d_ = 0;
};

// q^k in Q(sqrt(q)) for rational q
inline QuadRational quad_qpow(const Rational& q, HalfInt k) {
    long long t = k.twice();
    long long e = t >= 0 ? t / 2 : -((-t + 1) / 2);  // floor(t/2)
    Rational base = e >= 0 ? q : Rational(1) / q;
    Rational p = 1;
    for (long long i = 0; i < (e >= 0 ? e : -e); ++i) p *= base;
    if (t % 2 == 0) return {p, 0, q};
    return {0, p, q};  // q^{e + 1/2} = q^e sqrt(q)
}

// ---------------------------------------------------------------------------
// prod (1 - eps q^m a z)^e

struct FactorKey {
    int sign = 1;
    HalfInt m;
    auto operator<=>(const FactorKey&) const = default;
    bool operator==(const FactorKey&) const = default;
};

class FactorProduct {
public:
    using Map = std::map<FactorKey, int>;

    FactorProduct() = default;
    explicit FactorProduct(Map m) {
        for (auto& [k, e] : m)
            if (e != 0) f_[k] = e;
    }

    const Map& factors() const { return f_; }
    bool is_one() const { return f_.empty(); }
    int exponent(int sign, HalfInt m) const {
        auto it = f_.find({sign, m});
        return it == f_.end() ? 0 : it->second;
    }

    FactorProduct& add(int sign, HalfInt m, int e) {
        if (e == 0) return *this;
        int& slot = f_[{sign, m}];
        slot += e;
        if (slot == 0) f_.erase({sign, m});
        return *this;
    }
    FactorProduct& operator*=(const FactorProduct& g) {
        for (auto& [k, e] : g.f_) add(k.sign, k.m, e);
        return *this;
    }
    FactorProduct operator*(const FactorProduct& g) const {
        FactorProduct r = *this;
        r *= g;
        return r;
    }
    FactorProduct inverse() const {
        FactorProduct r;
        for (auto& [k, e] : f_) r.f_[k] = -e;
        return r;
    }
    FactorProduct operator/(const FactorProduct& g) const { return *this * g.inverse(); }
    bool operator==(const FactorProduct&) const = default;

    std::string str() const {
        if (f_.empty()) return "1";
        std::string s;
        for (auto& [k, e] : f_) {
            if (!s.empty()) s += " ";
            s += "(1";
            s += k.sign > 0 ? "-" : "+";
            s += "q^" + k.m.str() + "az)^" + std::to_string(e);
        }
        return s;
    }

private:
    Map f_;
};

inline FactorProduct factor_mul(const FactorProduct& f, const FactorProduct& g) { return f * g; }

// Taylor coefficients at z = 0, orders 0..order
inline std::vector<cplx> factor_series(const FactorProduct& f, int order, cplx q, cplx a) {
    if (order < 0) throw std::domain_error("negative series order");
    std::vector<cplx> s(order + 1, cplx(0));
    s[0] = 1.0;
    for (auto& [k, e] : f.factors()) {
        cplx c = static_cast<double>(k.sign) * qpow(q, k.m.to_double()) * a;
        for (int rep = 0; rep < std::abs(e); ++rep) {
            if (e > 0) {
                for (int d = order; d >= 1; --d) s[d] -= c * s[d - 1];
            } else {
                for (int d = 1; d <= order; ++d) s[d] += c * s[d - 1];
            }
        }
    }
    return s;
}

// exact variant for integer exponents and rational q, a
inline std::vector<Rational> factor_series(const FactorProduct& f, int order, const Rational& q,
                                           const Rational& a) {
    if (order < 0) throw std::domain_error("negative series order");
    std::vector<Rational> s(order + 1, Rational(0));
    s[0] = 1;
    for (auto& [k, e] : f.factors()) {
        Rational c = Scalar(q).pow(k.m).rational() * a * k.sign;
        for (int rep = 0; rep < std::abs(e); ++rep) {
            if (e > 0) {
                for (int d = order; d >= 1; --d) s[d] -= c * s[d - 1];
            } else {
                for (int d = 1; d <= order; ++d) s[d] += c * s[d - 1];
            }
        }
    }
    return s;
}

}  // namespace qsp
