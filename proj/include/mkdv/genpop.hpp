// Master functions, Bethe equations, fertile tuples, and the generation of
// tuples of polynomials Y^J(c) from the constant tuple, together with the
// bridge from Schur-polynomial tuples to generated families.
#pragma once

#include <complex>
#include <optional>
#include <utility>

#include "combin.hpp"
#include "linalg.hpp"
#include "roots.hpp"
#include "schur.hpp"

namespace mkdv {

// N monic polynomials in x with cyclic indices (y_{N+1} = y_1).  K is the
// coefficient field: Rational for numeric tuples, RatFun<Rational> when one
// generation coordinate is kept symbolic.
template <class K>
struct PolyTupleT {
    int n = 0;
    std::vector<Poly<K>> ys;

    PolyTupleT() = default;
    PolyTupleT(int n_, std::vector<Poly<K>> ys_) : n(n_), ys(std::move(ys_)) {
        if (n < 2 || int(ys.size()) != n)
            throw std::invalid_argument("PolyTuple: need N >= 2 polynomials");
        for (const auto& y : ys)
            if (!y.is_monic())
                throw std::invalid_argument("PolyTuple: entries must be monic");
    }

    static PolyTupleT constant_tuple(int n_) {
        return PolyTupleT(n_, std::vector<Poly<K>>(size_t(n_), Poly<K>::one()));
    }

    // 1-based cyclic access.
    const Poly<K>& at(int j) const {
        int idx = ((j - 1) % n + n) % n;
        return ys[size_t(idx)];
    }
    std::vector<long> degrees() const {
        std::vector<long> k;
        for (const auto& y : ys) k.push_back(y.degree());
        return k;
    }
    bool operator==(const PolyTupleT& o) const { return n == o.n && ys == o.ys; }
};

using PolyTuple = PolyTupleT<Rational>;

template <class K>
bool is_generic(const PolyTupleT<K>& y) {
    for (int j = 1; j <= y.n; ++j) {
        if (!squarefree(y.at(j))) return false;
        Poly<K> g = gcd_poly(y.at(j), y.at(j + 1));
        if (g.degree() > 0) return false;
    }
    return true;
}

// Solves Wr(y_j, w) = rhs for a polynomial w of degree <= max_deg by exact
// linear algebra on the coefficients.  Returns a particular solution, or
// nullopt when the system is inconsistent.
template <class K>
std::optional<Poly<K>> solve_wronskian_eq(const Poly<K>& yj, const Poly<K>& rhs,
                                          int max_deg) {
    if (max_deg < 0) max_deg = 0;
    size_t unknowns = size_t(max_deg) + 1;
    int out_deg = std::max(yj.degree() + max_deg - 1, rhs.degree());
    if (out_deg < 0) out_deg = 0;
    size_t eqs = size_t(out_deg) + 1;

    Poly<K> dyj = yj.derivative();
    std::vector<std::vector<K>> a(eqs, std::vector<K>(unknowns, K(0)));
    for (int d = 0; d <= max_deg; ++d) {
        // contribution of w = x^d: Wr(y_j, x^d) = d x^{d-1} y_j - x^d y_j'.
        for (int i = 0; i <= yj.degree(); ++i) {
            if (d >= 1) a[size_t(i + d - 1)][size_t(d)] += K(d) * yj.coeff(i);
        }
        for (int i = 0; i <= dyj.degree(); ++i)
            a[size_t(i + d)][size_t(d)] -= dyj.coeff(i);
    }
    std::vector<K> b(eqs, K(0));
    for (int i = 0; i <= rhs.degree(); ++i) b[size_t(i)] = rhs.coeff(i);

    auto res = linear_solve(a, b);
    if (!res.consistent()) return std::nullopt;
    return Poly<K>(res.solution);
}

// Fertility: for every direction j there is a polynomial w with
// Wr(y_j, w) = y_{j-1} y_{j+1}.  Polynomial solutions have degree at most
// max(k_j, k_{j-1}+k_{j+1}+1-k_j), so the finite linear system is exhaustive.
template <class K>
std::pair<bool, std::vector<Poly<K>>> is_fertile(const PolyTupleT<K>& y) {
    std::vector<Poly<K>> witnesses;
    for (int j = 1; j <= y.n; ++j) {
        long kj = std::max<long>(y.at(j).degree(), 0);
        long kprev = std::max<long>(y.at(j - 1).degree(), 0);
        long knext = std::max<long>(y.at(j + 1).degree(), 0);
        long ktil = kprev + knext + 1 - kj;
        int max_deg = int(std::max(kj, ktil));
        auto w = solve_wronskian_eq(y.at(j), y.at(j - 1) * y.at(j + 1), max_deg);
        if (!w) return {false, {}};
        witnesses.push_back(*w);
    }
    return {true, witnesses};
}

// One elementary generation step in a degree-increasing direction: the monic
// particular solution y_{j,0} of Wr(y_j, y_{j,0}) = const * y_{j-1} y_{j+1}
// whose coefficient of x^{k_j} vanishes, together with the proportionality
// constant const = k~_j - k_j forced by monic leading coefficients.
template <class K>
struct GenerationStepT {
    int j = 0;
    Poly<K> y_j0;
    K konst;
};
using GenerationStep = GenerationStepT<Rational>;

template <class K>
GenerationStepT<K> generate_step(const PolyTupleT<K>& y, int j) {
    long kj = std::max<long>(y.at(j).degree(), 0);
    long kprev = std::max<long>(y.at(j - 1).degree(), 0);
    long knext = std::max<long>(y.at(j + 1).degree(), 0);
    long ktil = kprev + knext + 1 - kj;
    if (ktil <= kj)
        throw std::invalid_argument(
            "generate_step: direction " + std::to_string(j) + " is not degree increasing");

    K konst(ktil - kj);
    auto w = solve_wronskian_eq(y.at(j), konst * (y.at(j - 1) * y.at(j + 1)), int(ktil));
    if (!w)
        throw std::runtime_error("generate_step: direction " + std::to_string(j) +
                                 " is infertile");
    // Homogeneous solutions of Wr(y_j, .) = 0 are multiples of y_j; subtract
    // the right multiple to zero the x^{k_j} coefficient, then the solution
    // with that normalization is unique and monic of degree k~_j.
    Poly<K> part = *w - Poly<K>(std::vector<K>{w->coeff(int(kj))}) * y.at(j);
    if (part.degree() != int(ktil) || !part.is_monic())
        throw std::runtime_error("generate_step: particular solution is not monic of the expected degree");
    if (!part.coeff(int(kj)).is_zero())
        throw std::runtime_error("generate_step: normalization failed");
    return GenerationStepT<K>{j, part, konst};
}

// Multistep generation Y^J(c) from the constant tuple.  J must be degree
// increasing; c supplies one coordinate per step.  With K = RatFun<Rational>
// a single coordinate may be the symbol itself, giving the family symbolically.
template <class K>
PolyTupleT<K> generate_multi(int n, const GenSeq& J, const std::vector<K>& c) {
    if (!is_degree_increasing(J, n))
        throw std::invalid_argument("generate_multi: sequence is not degree increasing");
    if (c.size() != J.size())
        throw std::invalid_argument("generate_multi: need one coordinate per step");
    PolyTupleT<K> y = PolyTupleT<K>::constant_tuple(n);
    for (size_t m = 0; m < J.size(); ++m) {
        GenerationStepT<K> step = generate_step(y, J[m]);
        int idx = ((J[m] - 1) % n + n) % n;
        y.ys[size_t(idx)] = step.y_j0 + Poly<K>(std::vector<K>{c[m]}) * y.ys[size_t(idx)];
    }
    return y;
}

inline PolyTuple generate_multi(int n, const GenSeq& J, const std::vector<Rational>& c) {
    return generate_multi<Rational>(n, J, c);
}

// Lemma 3.7-style polynomiality: in symbolic mode every coefficient of every
// entry must be polynomial in the symbol (constant denominator).
inline bool coefficients_polynomial_in_symbol(const PolyTupleT<RatQ>& y) {
    for (const auto& p : y.ys)
        for (int i = 0; i <= p.degree(); ++i)
            if (p.coeff(i).den().degree() > 0) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Master function and Bethe equations (numeric).

struct MasterSpec {
    int n = 0;
    std::vector<std::vector<Complex>> u;  // u[j][i], |u[j]| = k_{j+1}

    std::vector<long> k() const {
        std::vector<long> out;
        for (const auto& grp : u) out.push_back(long(grp.size()));
        return out;
    }
    const std::vector<Complex>& group(int j) const {  // 1-based cyclic
        int idx = ((j - 1) % n + n) % n;
        return u[size_t(idx)];
    }
};

inline void check_separation(const MasterSpec& spec, double min_dist = 1e-12) {
    auto bad = [&](Complex a, Complex b) { return std::abs(a - b) < min_dist; };
    for (int j = 1; j <= spec.n; ++j) {
        const auto& g = spec.group(j);
        for (size_t i = 0; i < g.size(); ++i)
            for (size_t i2 = i + 1; i2 < g.size(); ++i2)
                if (bad(g[i], g[i2]))
                    throw std::domain_error("master function: coincident particles in group " +
                                            std::to_string(j));
        const auto& gn = spec.group(j + 1);
        for (Complex a : g)
            for (Complex b : gn)
                if (bad(a, b))
                    throw std::domain_error(
                        "master function: coincident particles in neighbor groups " +
                        std::to_string(j) + "," + std::to_string(j + 1));
    }
}

// Phi(u) = 2 sum_j sum_{i<i'} log(u^j_i - u^j_{i'})
//          - sum_{j cyclic} sum_{i,i'} log(u^j_i - u^{j+1}_{i'}).
// For N = 2 the two neighbor sums coincide and are both included.
inline Complex master_value(const MasterSpec& spec) {
    check_separation(spec);
    Complex phi(0.0, 0.0);
    for (int j = 1; j <= spec.n; ++j) {
        const auto& g = spec.group(j);
        for (size_t i = 0; i < g.size(); ++i)
            for (size_t i2 = i + 1; i2 < g.size(); ++i2)
                phi += 2.0 * std::log(g[i] - g[i2]);
        const auto& gn = spec.group(j + 1);
        for (Complex a : g)
            for (Complex b : gn) phi -= std::log(a - b);
    }
    return phi;
}

// Left sides of the critical-point equations, one per variable:
//   sum_{i'!=i} 2/(u^j_i - u^j_{i'})
//   - sum_{i'} 1/(u^j_i - u^{j+1}_{i'}) - sum_{i'} 1/(u^j_i - u^{j-1}_{i'}).
inline std::vector<Complex> bethe_residuals(const MasterSpec& spec) {
    check_separation(spec);
    std::vector<Complex> res;
    for (int j = 1; j <= spec.n; ++j) {
        const auto& g = spec.group(j);
        for (size_t i = 0; i < g.size(); ++i) {
            Complex r(0.0, 0.0);
            for (size_t i2 = 0; i2 < g.size(); ++i2)
                if (i2 != i) r += 2.0 / (g[i] - g[i2]);
            for (Complex b : spec.group(j + 1)) r -= 1.0 / (g[i] - b);
            for (Complex b : spec.group(j - 1)) r -= 1.0 / (g[i] - b);
            res.push_back(r);
        }
    }
    return res;
}

// Numeric roots of a rational polynomial tuple packaged as a MasterSpec.
inline MasterSpec tuple_roots(const PolyTuple& y) {
    MasterSpec spec;
    spec.n = y.n;
    for (const auto& p : y.ys) {
        if (p.degree() <= 0)
            spec.u.push_back({});
        else
            spec.u.push_back(poly_roots_numeric(p));
    }
    return spec;
}

inline std::vector<Complex> bethe_residuals_of_tuple(const PolyTuple& y) {
    return bethe_residuals(tuple_roots(y));
}

// ---------------------------------------------------------------------------
// From Schur tuples to critical points and back to generated families.

// Monic rescalings of (F_{S_1}(x, t), ..., F_{S_N}(x, t)).  Requires the
// evaluations to be generic and fertile at t_sample.
inline PolyTuple schur_tuple_as_critical(const MKdVSetTuple& T,
                                         const std::vector<Rational>& t_sample) {
    std::vector<PolyQ> ys;
    for (const Maya& s : T.members) {
        PolyQ f = schur_eval_x(s, t_sample);
        long expect = long(maya_to_partition(s).weight());
        if (f.is_zero() || f.degree() != int(expect))
            throw std::domain_error("schur_tuple_as_critical: degenerate evaluation");
        ys.push_back(f.monic());
    }
    PolyTuple y(T.N, std::move(ys));
    if (!is_generic(y))
        throw std::domain_error("schur_tuple_as_critical: tuple is not generic at this t-sample");
    if (!is_fertile(y).first)
        throw std::domain_error("schur_tuple_as_critical: tuple is not fertile at this t-sample");
    return y;
}

// Seeded variant: resamples t until the evaluation is generic.
inline std::pair<PolyTuple, std::vector<Rational>> schur_tuple_as_critical(
    const MKdVSetTuple& T, Sampler& rng, int retries = 8) {
    for (int attempt = 0; attempt < retries; ++attempt) {
        std::vector<Rational> ts = rng.rationals(12, 6);
        try {
            return {schur_tuple_as_critical(T, ts), ts};
        } catch (const std::domain_error&) {
            continue;
        }
    }
    throw std::domain_error("schur_tuple_as_critical: no generic t-sample found");
}

// Writes the Schur tuple at t_sample as Y^J(c): J reverses the reduction of T
// to the constant tuple, and each c_m is read off as the x^{k_j} coefficient
// of the matching intermediate Schur polynomial (y_{j,0} has that coefficient
// zero and y_j is monic).  Exact equality is enforced at every step.
inline std::pair<GenSeq, std::vector<Rational>> lift_to_generation(
    const MKdVSetTuple& T, const std::vector<Rational>& t_sample) {
    std::vector<int> trace = reduce_tuple_to_empty(T);
    std::vector<MKdVSetTuple> chain{T};
    for (int i : trace) chain.push_back(mutate_tuple(chain.back(), i));

    GenSeq J(trace.rbegin(), trace.rend());
    std::vector<Rational> c;
    PolyTuple y = PolyTuple::constant_tuple(T.N);
    for (size_t m = 0; m < J.size(); ++m) {
        int j = J[m];
        int idx = ((j - 1) % T.N + T.N) % T.N;
        GenerationStep step = generate_step(y, j);
        const MKdVSetTuple& target_tuple = chain[chain.size() - 2 - m];
        PolyQ target = schur_eval_x(target_tuple.members[size_t(idx)], t_sample);
        if (target.is_zero())
            throw std::runtime_error("lift_to_generation: degenerate target at step " +
                                     std::to_string(m + 1));
        target = target.monic();
        long kj = std::max<long>(y.ys[size_t(idx)].degree(), 0);
        Rational cm = target.coeff(int(kj));
        PolyQ built = step.y_j0 + PolyQ(std::vector<Rational>{cm}) * y.ys[size_t(idx)];
        if (!(built == target))
            throw std::runtime_error("lift_to_generation: mismatch at step " +
                                     std::to_string(m + 1));
        y.ys[size_t(idx)] = built;
        c.push_back(cm);
    }
    return {J, c};
}

} // namespace mkdv
