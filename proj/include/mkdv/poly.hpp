// Dense univariate polynomials over a field K.
//
// K must be a value type with K(long long), +, -, *, /, ==, is_zero().
// In practice K is Rational, or RatFun<Rational> when one symbolic parameter
// (a generation constant c_k) is carried through a computation.
//
// The degree of the zero polynomial is the sentinel kZeroDegree, never -1:
// callers must branch on is_zero() before doing degree arithmetic.
#pragma once

#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "rational.hpp"

namespace mkdv {

template <class K>
class Poly {
public:
    static constexpr int kZeroDegree = std::numeric_limits<int>::min();

    Poly() = default;
    Poly(const K& c) { c_.push_back(c); trim(); }
    Poly(long long c) : Poly(K(c)) {}
    explicit Poly(std::vector<K> coeffs) : c_(std::move(coeffs)) { trim(); }

    static Poly zero() { return Poly(); }
    static Poly one() { return Poly(K(1)); }
    // The monomial coeff * x^deg.
    static Poly monomial(int deg, const K& coeff = K(1)) {
        if (deg < 0) throw std::invalid_argument("Poly::monomial: negative degree");
        std::vector<K> c(deg + 1, K(0));
        c[deg] = coeff;
        return Poly(std::move(c));
    }
    static Poly x() { return monomial(1); }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return c_.empty() ? kZeroDegree : int(c_.size()) - 1; }
    const std::vector<K>& coeffs() const { return c_; }

    // Coefficient of x^i (zero beyond the stored range).
    K coeff(int i) const {
        if (i < 0 || i >= int(c_.size())) return K(0);
        return c_[i];
    }

    K leading() const {
        if (is_zero()) throw std::domain_error("Poly: leading coefficient of zero");
        return c_.back();
    }

    bool is_monic() const { return !is_zero() && leading() == K(1); }

    Poly operator-() const {
        Poly r(*this);
        for (auto& c : r.c_) c = K(0) - c;
        return r;
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        std::vector<K> c(std::max(a.c_.size(), b.c_.size()), K(0));
        for (size_t i = 0; i < a.c_.size(); ++i) c[i] = a.c_[i];
        for (size_t i = 0; i < b.c_.size(); ++i) c[i] = c[i] + b.c_[i];
        return Poly(std::move(c));
    }
    friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        std::vector<K> c(a.c_.size() + b.c_.size() - 1, K(0));
        for (size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i].is_zero()) continue;
            for (size_t j = 0; j < b.c_.size(); ++j)
                c[i + j] = c[i + j] + a.c_[i] * b.c_[j];
        }
        return Poly(std::move(c));
    }

    friend Poly operator*(const K& s, const Poly& p) {
        Poly r(p);
        for (auto& c : r.c_) c = s * c;
        r.trim();
        return r;
    }

    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    Poly derivative() const {
        if (c_.size() <= 1) return Poly();
        std::vector<K> c(c_.size() - 1, K(0));
        for (size_t i = 1; i < c_.size(); ++i) c[i - 1] = K((long long)i) * c_[i];
        return Poly(std::move(c));
    }

    K eval(const K& x) const {
        K r(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
        return r;
    }

    // Composition p(q(x)) by Horner over Poly arithmetic.
    Poly compose(const Poly& q) const {
        Poly r;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * q + Poly(*it);
        return r;
    }

    // p(x + a): used for tau-function flow shifts and Wilson checks.
    Poly shift_arg(const K& a) const {
        Poly q(std::vector<K>{a, K(1)});
        return compose(q);
    }

    Poly monic() const {
        if (is_zero()) throw std::domain_error("Poly: cannot make zero monic");
        K inv = K(1) / leading();
        return inv * *this;
    }

    // Euclidean division; the divisor's leading coefficient is inverted in K.
    friend std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
        if (b.is_zero()) throw std::domain_error("Poly: division by zero polynomial");
        if (a.is_zero() || a.degree() < b.degree()) return {Poly(), a};
        std::vector<K> rem = a.c_;
        std::vector<K> quo(a.degree() - b.degree() + 1, K(0));
        K lead_inv = K(1) / b.leading();
        for (int i = int(rem.size()) - 1; i >= b.degree(); --i) {
            if (rem[i].is_zero()) continue;
            K q = rem[i] * lead_inv;
            quo[i - b.degree()] = q;
            for (int j = 0; j <= b.degree(); ++j)
                rem[i - b.degree() + j] = rem[i - b.degree() + j] - q * b.c_[j];
        }
        return {Poly(std::move(quo)), Poly(std::move(rem))};
    }

    std::string str(const std::string& var = "x") const;

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    std::vector<K> c_;
};

// Monic gcd by the Euclidean algorithm; each divisor is made monic first,
// which keeps coefficient growth manageable at the scale this library runs at.
template <class K>
Poly<K> gcd_poly(Poly<K> a, Poly<K> b) {
    while (!b.is_zero()) {
        auto [q, r] = divmod(a, b.monic());
        a = b;
        b = r;
    }
    if (a.is_zero()) return a;
    return a.monic();
}

template <class K>
bool squarefree(const Poly<K>& p) {
    if (p.is_zero()) return false;
    if (p.degree() <= 1) return true;
    Poly<K> g = gcd_poly(p, p.derivative());
    return g.degree() == 0;
}

template <class K>
std::string Poly<K>::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::string out;
    for (int i = degree(); i >= 0; --i) {
        if (coeff(i).is_zero()) continue;
        if (!out.empty()) out += " + ";
        out += "(" + to_display(coeff(i)) + ")";
        if (i >= 1) out += "*" + var;
        if (i >= 2) out += "^" + std::to_string(i);
    }
    return out;
}

using PolyQ = Poly<Rational>;

// Fast gcd for rational-coefficient polynomials: clear denominators and run a
// primitive pseudo-remainder sequence over the integers.  Integer content
// gcds avoid the coefficient blowup of monic Euclid over Q, which dominates
// the cost of rational-function arithmetic at dressing depth.
template <>
inline Poly<Rational> gcd_poly<Rational>(Poly<Rational> a, Poly<Rational> b) {
    if (a.is_zero()) return b.is_zero() ? b : b.monic();
    if (b.is_zero()) return a.monic();

    using boost::multiprecision::gcd;
    using boost::multiprecision::lcm;

    auto to_int = [](const Poly<Rational>& p) {
        BigInt l = 1;
        for (int i = 0; i <= p.degree(); ++i) l = lcm(l, p.coeff(i).denominator());
        std::vector<BigInt> c(size_t(p.degree()) + 1);
        for (int i = 0; i <= p.degree(); ++i)
            c[size_t(i)] = p.coeff(i).numerator() * (l / p.coeff(i).denominator());
        return c;
    };
    auto primitive = [](std::vector<BigInt>& c) {
        while (!c.empty() && c.back() == 0) c.pop_back();
        if (c.empty()) return;
        BigInt g = 0;
        for (const auto& x : c) {
            g = gcd(g, x);
            if (g == 1) return;
        }
        for (auto& x : c) x /= g;
    };
    auto prem = [](std::vector<BigInt> u, const std::vector<BigInt>& v) {
        size_t n = v.size() - 1;
        while (u.size() >= v.size()) {
            size_t m = u.size() - 1;
            BigInt lu = u.back();
            const BigInt& lv = v.back();
            for (auto& x : u) x *= lv;
            for (size_t i = 0; i <= n; ++i) u[m - n + i] -= lu * v[i];
            while (!u.empty() && u.back() == 0) u.pop_back();
        }
        return u;
    };

    std::vector<BigInt> u = to_int(a), v = to_int(b);
    primitive(u);
    primitive(v);
    if (u.size() < v.size()) std::swap(u, v);
    while (!v.empty()) {
        std::vector<BigInt> r = prem(u, v);
        primitive(r);
        u = std::move(v);
        v = std::move(r);
    }
    std::vector<Rational> out;
    out.reserve(u.size());
    for (const auto& x : u) out.push_back(Rational(x));
    return Poly<Rational>(std::move(out)).monic();
}

} // namespace mkdv
