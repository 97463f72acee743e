// Sparse multivariate polynomials over Q in the variables t_1, ..., t_nvars.
//
// The variable list is implicit: index v (0-based) means t_{v+1}.  Binary
// operations promote both operands to the larger arity, so h-polynomials and
// Schur/tau polynomials of different depths mix freely.  t_1 (index 0) is the
// distinguished variable: Wronskians and the derivative() default act on it.
#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "poly.hpp"
#include "rational.hpp"

namespace mkdv {

class MultiPoly {
public:
    using Expt = std::vector<int>;
    using TermMap = std::map<Expt, Rational>;

    MultiPoly() : nvars_(0) {}
    MultiPoly(long long c) : nvars_(0) {
        if (c != 0) terms_[Expt{}] = Rational(c);
    }
    explicit MultiPoly(const Rational& c) : nvars_(0) {
        if (!c.is_zero()) terms_[Expt{}] = c;
    }
    MultiPoly(int nvars, TermMap terms) : nvars_(nvars), terms_(std::move(terms)) {
        for (auto it = terms_.begin(); it != terms_.end();) {
            if (it->first.size() != size_t(nvars_))
                throw std::invalid_argument("MultiPoly: exponent arity mismatch");
            it = it->second.is_zero() ? terms_.erase(it) : std::next(it);
        }
    }

    // The variable t_{v+1} as a polynomial.
    static MultiPoly var(int v) {
        MultiPoly p;
        p.nvars_ = v + 1;
        Expt e(v + 1, 0);
        e[v] = 1;
        p.terms_[e] = Rational(1);
        return p;
    }

    int nvars() const { return nvars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Expt(nvars_, 0)); }

    Rational constant_term() const {
        auto it = terms_.find(Expt(nvars_, 0));
        return it == terms_.end() ? Rational(0) : it->second;
    }

    // Highest exponent of variable v (0 for the zero polynomial).
    int degree(int v) const {
        int d = 0;
        for (const auto& [e, c] : terms_)
            if (v < int(e.size())) d = std::max(d, e[v]);
        return d;
    }

    MultiPoly promoted(int nvars) const {
        if (nvars < nvars_) throw std::invalid_argument("MultiPoly: cannot demote arity");
        if (nvars == nvars_) return *this;
        MultiPoly r;
        r.nvars_ = nvars;
        for (const auto& [e, c] : terms_) {
            Expt e2 = e;
            e2.resize(nvars, 0);
            r.terms_[std::move(e2)] = c;
        }
        return r;
    }

    MultiPoly operator-() const {
        MultiPoly r(*this);
        for (auto& [e, c] : r.terms_) c = -c;
        return r;
    }

    friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
        int nv = std::max(a.nvars_, b.nvars_);
        MultiPoly r = a.promoted(nv);
        for (const auto& [e, c] : b.promoted(nv).terms_) {
            auto it = r.terms_.find(e);
            if (it == r.terms_.end()) r.terms_[e] = c;
            else {
                it->second += c;
                if (it->second.is_zero()) r.terms_.erase(it);
            }
        }
        return r;
    }
    friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) { return a + (-b); }

    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
        int nv = std::max(a.nvars_, b.nvars_);
        MultiPoly pa = a.promoted(nv), pb = b.promoted(nv);
        MultiPoly r;
        r.nvars_ = nv;
        Expt e(nv);
        for (const auto& [ea, ca] : pa.terms_) {
            for (const auto& [eb, cb] : pb.terms_) {
                for (int i = 0; i < nv; ++i) e[i] = ea[i] + eb[i];
                Rational prod = ca * cb;
                auto it = r.terms_.find(e);
                if (it == r.terms_.end()) r.terms_[e] = prod;
                else {
                    it->second += prod;
                    if (it->second.is_zero()) r.terms_.erase(it);
                }
            }
        }
        return r;
    }

    friend MultiPoly operator*(const Rational& s, const MultiPoly& p) {
        if (s.is_zero()) return MultiPoly();
        MultiPoly r(p);
        for (auto& [e, c] : r.terms_) c *= s;
        return r;
    }

    friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
        return (a - b).is_zero();
    }
    friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

    // Partial derivative with respect to t_{v+1}; default v = 0 is d/dt_1,
    // matching the Wronskian convention used throughout.
    MultiPoly derivative(int v = 0) const {
        MultiPoly r;
        r.nvars_ = nvars_;
        for (const auto& [e, c] : terms_) {
            if (v >= int(e.size()) || e[v] == 0) continue;
            Expt e2 = e;
            e2[v] -= 1;
            r.terms_[std::move(e2)] = Rational((long long)e[v]) * c;
        }
        return r;
    }

    // Coefficient of t_{v+1}^k, as a polynomial in the remaining variables
    // (same arity, exponent of v zeroed out).
    MultiPoly coeff_of(int v, int k) const {
        MultiPoly r;
        r.nvars_ = nvars_;
        for (const auto& [e, c] : terms_) {
            int ev = v < int(e.size()) ? e[v] : 0;
            if (ev != k) continue;
            Expt e2 = e;
            if (v < int(e2.size())) e2[v] = 0;
            r.terms_[std::move(e2)] = c;
        }
        return r;
    }

    Rational eval(const std::vector<Rational>& vals) const {
        if (int(vals.size()) < nvars_)
            throw std::invalid_argument("MultiPoly::eval: too few values");
        Rational sum(0);
        for (const auto& [e, c] : terms_) {
            Rational t = c;
            for (int i = 0; i < int(e.size()); ++i)
                if (e[i] != 0) t *= vals[i].pow(e[i]);
            sum += t;
        }
        return sum;
    }

    // Substitutes t_1 = subst (a univariate polynomial in x) and t_{j+1} =
    // vals[j] for j >= 1, producing a univariate polynomial in x.  This is
    // the bridge from tau/Schur polynomials to critical-point polynomials.
    PolyQ specialize_t1(const PolyQ& subst, const std::vector<Rational>& rest) const {
        std::vector<PolyQ> powers{PolyQ::one()};
        PolyQ out;
        for (const auto& [e, c] : terms_) {
            Rational t = c;
            for (int i = 1; i < int(e.size()); ++i) {
                if (e[i] == 0) continue;
                if (int(rest.size()) < i)
                    throw std::invalid_argument("MultiPoly::specialize_t1: too few values");
                t *= rest[i - 1].pow(e[i]);
            }
            int e1 = e.empty() ? 0 : e[0];
            while (int(powers.size()) <= e1) powers.push_back(powers.back() * subst);
            out = out + t * powers[e1];
        }
        return out;
    }

    // t_{v+1} -> t_{v+1} + a, expanded exactly (binomial theorem).
    MultiPoly shift_var(int v, const Rational& a) const {
        if (a.is_zero() || v >= nvars_) return *this;
        MultiPoly r;
        r.nvars_ = nvars_;
        for (const auto& [e, c] : terms_) {
            int ev = e[v];
            // (t+a)^ev term by term, with binomial coefficients kept exact.
            Rational binom(1);
            Rational apow(1);
            for (int i = ev; i >= 0; --i) {
                Expt e2 = e;
                e2[v] = i;
                Rational coeff = c * binom * apow;
                auto it = r.terms_.find(e2);
                if (it == r.terms_.end()) {
                    if (!coeff.is_zero()) r.terms_[std::move(e2)] = coeff;
                } else {
                    it->second += coeff;
                    if (it->second.is_zero()) r.terms_.erase(it);
                }
                if (i > 0) {
                    binom *= Rational((long long)i, (long long)(ev - i + 1));
                    apow *= a;
                }
            }
        }
        return r;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string out;
        for (const auto& [e, c] : terms_) {
            if (!out.empty()) out += " + ";
            out += "(" + c.str() + ")";
            for (int i = 0; i < int(e.size()); ++i) {
                if (e[i] == 0) continue;
                out += "*t" + std::to_string(i + 1);
                if (e[i] > 1) out += "^" + std::to_string(e[i]);
            }
        }
        return out;
    }

private:
    int nvars_;
    TermMap terms_;
};

} // namespace mkdv
