// Deterministic seeded sampling of small exact values for property tests
// and CLI verification runs.  Numerators/denominators are kept small
// (|.| <= 20) so that exact arithmetic downstream stays fast.
#pragma once

#include <random>
#include <vector>

#include "poly.hpp"
#include "rational.hpp"

namespace mkdv {

class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : rng_(seed) {}

    std::uint64_t raw() { return rng_(); }

    long long int_in(long long lo, long long hi) {
        return std::uniform_int_distribution<long long>(lo, hi)(rng_);
    }

    // Small nonzero-denominator rational with |num|, den <= 20.
    Rational rational(long long max_abs = 20) {
        long long num = int_in(-max_abs, max_abs);
        long long den = int_in(1, max_abs);
        return Rational(num, den);
    }

    Rational nonzero_rational(long long max_abs = 20) {
        while (true) {
            Rational r = rational(max_abs);
            if (!r.is_zero()) return r;
        }
    }

    std::vector<Rational> rationals(size_t count, long long max_abs = 20) {
        std::vector<Rational> v;
        v.reserve(count);
        for (size_t i = 0; i < count; ++i) v.push_back(rational(max_abs));
        return v;
    }

    PolyQ poly(int max_deg, long long max_abs = 5) {
        int deg = int(int_in(0, max_deg));
        std::vector<Rational> c(deg + 1);
        for (int i = 0; i < deg; ++i) c[i] = rational(max_abs);
        c[deg] = nonzero_rational(max_abs);
        return PolyQ(std::move(c));
    }

private:
    std::mt19937_64 rng_;
};

} // namespace mkdv
