// Rational functions num/den over a field K, reduced (gcd = 1) with monic
// denominator.  RatFun<K> is itself a field, so it can serve as the
// coefficient field of another Poly: Poly<RatFun<Rational>> is Q(c)[x],
// which is how single-symbolic-parameter computations are carried out.
#pragma once

#include "poly.hpp"

namespace mkdv {

template <class K>
class RatFun {
public:
    RatFun() : num_(), den_(Poly<K>::one()) {}
    RatFun(long long c) : num_(Poly<K>(c)), den_(Poly<K>::one()) {}
    RatFun(const K& c) : num_(Poly<K>(c)), den_(Poly<K>::one()) {}
    RatFun(const Poly<K>& p) : num_(p), den_(Poly<K>::one()) {}
    RatFun(const Poly<K>& num, const Poly<K>& den) : num_(num), den_(den) { reduce(); }

    static RatFun zero() { return RatFun(); }
    static RatFun one() { return RatFun(1); }
    static RatFun x() { return RatFun(Poly<K>::x()); }

    const Poly<K>& num() const { return num_; }
    const Poly<K>& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }

    // The constant value; only valid when is_constant().
    K constant_value() const {
        if (!is_constant()) throw std::domain_error("RatFun: not a constant");
        if (num_.is_zero()) return K(0);
        return num_.coeff(0) / den_.coeff(0);
    }

    RatFun operator-() const {
        RatFun r(*this);
        r.num_ = -r.num_;
        return r;
    }

    friend RatFun operator+(const RatFun& a, const RatFun& b) {
        return RatFun(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFun operator-(const RatFun& a, const RatFun& b) { return a + (-b); }
    friend RatFun operator*(const RatFun& a, const RatFun& b) {
        return RatFun(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RatFun operator/(const RatFun& a, const RatFun& b) {
        if (b.is_zero()) throw std::domain_error("RatFun: division by zero");
        return RatFun(a.num_ * b.den_, a.den_ * b.num_);
    }

    RatFun& operator+=(const RatFun& o) { return *this = *this + o; }
    RatFun& operator-=(const RatFun& o) { return *this = *this - o; }
    RatFun& operator*=(const RatFun& o) { return *this = *this * o; }
    RatFun& operator/=(const RatFun& o) { return *this = *this / o; }

    friend bool operator==(const RatFun& a, const RatFun& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RatFun& a, const RatFun& b) { return !(a == b); }

    // Derivative with respect to the polynomial variable (quotient rule).
    RatFun derivative() const {
        return RatFun(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
    }

    K eval(const K& x) const {
        K d = den_.eval(x);
        if (d.is_zero()) throw std::domain_error("RatFun: pole at evaluation point");
        return num_.eval(x) / d;
    }

    std::string str(const std::string& var = "x") const {
        if (den_.degree() == 0 && den_.coeff(0) == K(1)) return num_.str(var);
        return "(" + num_.str(var) + ")/(" + den_.str(var) + ")";
    }

private:
    void reduce() {
        if (den_.is_zero()) throw std::domain_error("RatFun: zero denominator");
        if (num_.is_zero()) {
            den_ = Poly<K>::one();
            return;
        }
        Poly<K> g = gcd_poly(num_, den_);
        if (g.degree() > 0) {
            num_ = divmod(num_, g).first;
            den_ = divmod(den_, g).first;
        }
        K lead_inv = K(1) / den_.leading();
        num_ = lead_inv * num_;
        den_ = lead_inv * den_;
    }

    Poly<K> num_;
    Poly<K> den_;
};

// log'(p) = p'/p.
template <class K>
RatFun<K> log_deriv(const Poly<K>& p) {
    if (p.is_zero()) throw std::domain_error("log_deriv: zero polynomial");
    return RatFun<K>(p.derivative(), p);
}

template <class K>
RatFun<K> log_deriv(const RatFun<K>& f) {
    if (f.is_zero()) throw std::domain_error("log_deriv: zero function");
    return f.derivative() / f;
}

template <class K>
std::string to_display(const RatFun<K>& f) { return f.str(); }

using RatQ = RatFun<Rational>;

// Fast gcd for polynomials over Q(c): clear coefficient denominators to land
// in Q[c][x] and run a primitive pseudo-remainder sequence in x, with content
// removal going through the fast rational-coefficient gcd.  Monic Euclid over
// Q(c) explodes coefficient sizes; this keeps one-symbolic-parameter
// computations (generation with a symbolic c_k) tractable.
template <>
inline Poly<RatQ> gcd_poly<RatQ>(Poly<RatQ> a, Poly<RatQ> b) {
    if (a.is_zero()) return b.is_zero() ? b : b.monic();
    if (b.is_zero()) return a.monic();

    using PX = std::vector<PolyQ>;  // x-coefficients, each a polynomial in c

    auto clear = [](const Poly<RatQ>& p) {
        PolyQ l = PolyQ::one();  // common multiple of the denominators
        for (int i = 0; i <= p.degree(); ++i) {
            PolyQ d = p.coeff(i).den();  // copy: coeff() returns by value
            PolyQ g = gcd_poly(l, d);
            l = l * divmod(d, g).first;
        }
        PX c(size_t(p.degree()) + 1);
        for (int i = 0; i <= p.degree(); ++i)
            c[size_t(i)] = p.coeff(i).num() * divmod(l, p.coeff(i).den()).first;
        return c;
    };
    auto primitive = [](PX& c) {
        while (!c.empty() && c.back().is_zero()) c.pop_back();
        if (c.empty()) return;
        PolyQ g;
        for (const auto& q : c) {
            g = gcd_poly(g, q);
            if (g.degree() == 0) break;
        }
        if (g.degree() > 0)
            for (auto& q : c) q = divmod(q, g).first;
    };
    auto prem = [](PX u, const PX& v) {
        size_t n = v.size() - 1;
        while (u.size() >= v.size()) {
            size_t m = u.size() - 1;
            PolyQ lu = u.back();
            const PolyQ& lv = v.back();
            for (auto& q : u) q = q * lv;
            for (size_t i = 0; i <= n; ++i) u[m - n + i] = u[m - n + i] - lu * v[i];
            while (!u.empty() && u.back().is_zero()) u.pop_back();
        }
        return u;
    };

    PX u = clear(a), v = clear(b);
    primitive(u);
    primitive(v);
    if (u.size() < v.size()) std::swap(u, v);
    while (!v.empty()) {
        PX r = prem(u, v);
        primitive(r);
        u = std::move(v);
        v = std::move(r);
    }
    std::vector<RatQ> out;
    out.reserve(u.size());
    for (const auto& q : u) out.push_back(RatQ(q));
    return Poly<RatQ>(std::move(out)).monic();
}

} // namespace mkdv
