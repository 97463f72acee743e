// Arbitrary-precision rational numbers.
//
// Thin value-type wrapper around boost::multiprecision::cpp_rational.  The
// wrapper pins down the invariants we rely on everywhere (gcd(num, den) = 1,
// den > 0, zero is 0/1 — all maintained by boost) and fixes the one external
// convention: serialization as the string "num/den" (or "num" when den = 1).
#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace mkdv {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

class Rational {
public:
    Rational() : v_(0) {}
    Rational(long long n) : v_(n) {}
    Rational(const BigInt& n) : v_(n) {}
    Rational(const BigRat& v) : v_(v) {}
    Rational(const BigInt& num, const BigInt& den) : v_(num) {
        if (den == 0) throw std::invalid_argument("Rational: zero denominator");
        v_ /= BigRat(den);  // handles sign normalization and reduction
    }
    Rational(long long num, long long den) : Rational(BigInt(num), BigInt(den)) {}

    static Rational zero() { return Rational(); }
    static Rational one() { return Rational(1); }

    // Parses "a/b" or "a" (optional sign, decimal digits).
    static Rational parse(const std::string& s) {
        auto slash = s.find('/');
        if (slash == std::string::npos) return Rational(BigInt(s));
        BigInt num(s.substr(0, slash));
        BigInt den(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("Rational::parse: zero denominator");
        return Rational(num, den);
    }

    BigInt numerator() const { return boost::multiprecision::numerator(v_); }
    BigInt denominator() const { return boost::multiprecision::denominator(v_); }

    bool is_zero() const { return v_.is_zero(); }
    bool is_one() const { return v_ == 1; }
    int sign() const { return v_.sign(); }

    Rational operator-() const { return Rational(BigRat(-v_)); }
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw std::domain_error("Rational: division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

    Rational inverse() const {
        if (is_zero()) throw std::domain_error("Rational: inverse of zero");
        return Rational(BigRat(1) / v_);
    }

    Rational abs() const { return v_ < 0 ? -*this : *this; }

    Rational pow(long e) const {
        if (e < 0) return inverse().pow(-e);
        Rational r(1), b(*this);
        while (e > 0) {
            if (e & 1) r *= b;
            b *= b;
            e >>= 1;
        }
        return r;
    }

    double to_double() const { return v_.convert_to<double>(); }

    std::string str() const {
        if (denominator() == 1) return numerator().str();
        return numerator().str() + "/" + denominator().str();
    }

private:
    BigRat v_;
};

inline std::string to_display(const Rational& r) { return r.str(); }

} // namespace mkdv
