// Numeric root finding for exact rational polynomials: Aberth–Ehrlich
// simultaneous iteration on complex doubles.  Used only for the numeric
// Bethe-residual checks; everything structural stays exact.
#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "poly.hpp"

namespace mkdv {

using Complex = std::complex<double>;

struct RootFindingError : std::runtime_error {
    std::vector<Complex> best;
    explicit RootFindingError(std::vector<Complex> iterates)
        : std::runtime_error("poly_roots_numeric: iteration did not converge"),
          best(std::move(iterates)) {}
};

// All deg(p) roots of p (with multiplicity, approximated), each with
// |p(root)| / max|coeff| < tol.  Constant polynomials have no roots.
inline std::vector<Complex> poly_roots_numeric(const PolyQ& p, double tol = 1e-12) {
    if (p.is_zero()) throw std::invalid_argument("poly_roots_numeric: zero polynomial");
    int deg = p.degree();
    if (deg == 0) return {};

    std::vector<Complex> a(deg + 1);
    double norm = 0.0;
    for (int i = 0; i <= deg; ++i) {
        a[i] = Complex(p.coeff(i).to_double(), 0.0);
        norm = std::max(norm, std::abs(a[i]));
    }

    auto eval = [&](Complex z, Complex& val, Complex& der) {
        val = a[deg];
        der = Complex(0, 0);
        for (int i = deg - 1; i >= 0; --i) {
            der = der * z + val;
            val = val * z + a[i];
        }
    };

    // Initial guesses on a circle of radius from the Cauchy coefficient
    // bound, slightly perturbed in angle to break symmetries.
    double radius = 0.0;
    for (int i = 0; i < deg; ++i)
        radius = std::max(radius, std::pow(std::abs(a[i] / a[deg]), 1.0 / (deg - i)));
    radius = 2.0 * std::max(radius, 0.5);
    std::vector<Complex> z(deg);
    for (int i = 0; i < deg; ++i) {
        double theta = 2.0 * M_PI * i / deg + 0.4;
        z[i] = radius * Complex(std::cos(theta), std::sin(theta));
    }

    const int kMaxIter = 2000;
    for (int iter = 0; iter < kMaxIter; ++iter) {
        double max_step = 0.0;
        for (int i = 0; i < deg; ++i) {
            Complex val, der;
            eval(z[i], val, der);
            if (std::abs(val) == 0.0) continue;
            Complex newton = der / val;  // p'(z)/p(z)
            Complex repulsion(0, 0);
            for (int j = 0; j < deg; ++j)
                if (j != i) repulsion += 1.0 / (z[i] - z[j]);
            Complex denom = newton - repulsion;
            if (std::abs(denom) == 0.0) continue;
            Complex step = 1.0 / denom;
            z[i] -= step;
            max_step = std::max(max_step, std::abs(step));
        }
        if (max_step < 1e-14 * std::max(1.0, radius)) break;
    }

    for (int i = 0; i < deg; ++i) {
        Complex val, der;
        eval(z[i], val, der);
        if (std::abs(val) / norm >= tol) throw RootFindingError(z);
    }
    return z;
}

} // namespace mkdv
