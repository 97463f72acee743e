// h-polynomials, Schur polynomials (determinant and Wronskian forms),
// the t_1-derivative rule, the pair and k-fold Wronskian identities, and
// the scalar differential operator attached to an mKdV tuple of subsets.
#pragma once

#include <map>
#include <optional>

#include "combin.hpp"
#include "linalg.hpp"
#include "multipoly.hpp"
#include "ratfun.hpp"
#include "sampling.hpp"

namespace mkdv {

// h_i defined by exp(-Σ_j t_j z^j) = Σ_i h_i z^i, so that ∂h_i/∂t_1 = -h_{i-1}
// and h_i(t_1, t=0) = (-t_1)^i / i!.  Computed by the recurrence
// i·h_i = -Σ_{j=1}^{i} j t_j h_{i-j}.  Negative indices give 0.
inline const MultiPoly& h_poly(int i) {
    static std::vector<MultiPoly> cache{MultiPoly(1)};
    static const MultiPoly zero;
    if (i < 0) return zero;
    while (int(cache.size()) <= i) {
        int n = int(cache.size());
        MultiPoly sum;
        for (int j = 1; j <= n; ++j)
            sum = sum + Rational((long long)j) * (MultiPoly::var(j - 1) * cache[n - j]);
        cache.push_back(Rational(-1, (long long)n) * sum);
    }
    return cache[i];
}

inline std::vector<MultiPoly> h_polys(int max_index) {
    std::vector<MultiPoly> out;
    for (int i = 0; i <= max_index; ++i) out.push_back(h_poly(i));
    return out;
}

// Wronskian with the empty-list convention Wr() = 1.
inline MultiPoly wr_t1(const std::vector<MultiPoly>& fs) {
    if (fs.empty()) return MultiPoly(1);
    return wronskian(fs);
}

// F_λ = det_{i,j=0}^n (h_{λ_i - i + j}); also equal to
// Wr_{t_1}(h_{λ_0+n}, ..., h_{λ_n}).  Both forms are computed and compared;
// the determinant form is returned (and cached by partition).
inline const MultiPoly& schur(const Partition& lambda) {
    static std::map<std::vector<long>, MultiPoly> cache;
    auto it = cache.find(lambda.parts);
    if (it != cache.end()) return it->second;

    int n = int(lambda.parts.size()) - 1;
    MultiPoly det_form;
    if (n < 0) {
        det_form = MultiPoly(1);
    } else {
        std::vector<std::vector<MultiPoly>> m(n + 1, std::vector<MultiPoly>(n + 1));
        for (int i = 0; i <= n; ++i)
            for (int j = 0; j <= n; ++j)
                m[i][j] = h_poly(int(lambda.parts[i]) - i + j);
        det_form = ring_determinant(m);

        std::vector<MultiPoly> rows;
        for (int i = 0; i <= n; ++i) rows.push_back(h_poly(int(lambda.parts[i]) + n - i));
        if (!(wr_t1(rows) == det_form))
            throw std::logic_error("schur: determinant and Wronskian forms disagree");
    }
    return cache.emplace(lambda.parts, std::move(det_form)).first->second;
}

inline const MultiPoly& schur_from_maya(const Maya& s) {
    return schur(maya_to_partition(s));
}

// The partitions λ^i obtained by decreasing one part by 1 (when the result
// is still a partition).
inline std::vector<Partition> derivative_partitions(const Partition& lambda) {
    std::vector<Partition> out;
    for (size_t i = 0; i < lambda.parts.size(); ++i) {
        if (lambda.parts[i] - 1 < lambda.part(i + 1)) continue;
        std::vector<long> p = lambda.parts;
        p[i] -= 1;
        out.push_back(Partition(std::move(p)));
    }
    return out;
}

// ∂F_λ/∂t_1 + Σ_i F_{λ^i} = 0.
inline bool derivative_rule_check(const Partition& lambda) {
    MultiPoly sum = schur(lambda).derivative(0);
    for (const Partition& mu : derivative_partitions(lambda)) sum = sum + schur(mu);
    return sum.is_zero();
}

// Theorem-6.9-style pair identity.  From S and a_1 < a_2 (both outside S+1)
// build S_1 = {a_1} ∪ (S+1), S_2 = {a_2} ∪ (S+1), S_3 = S,
// S_4 = {a_1+1, a_2+1} ∪ (S+2); then Wr_{t_1}(F_{S_1}, F_{S_2}) = F_{S_3}F_{S_4}.
struct PairIdentityResult {
    Maya s1, s2, s3, s4;
    bool verified = false;
};

inline PairIdentityResult pair_identity(const Maya& s, long a1, long a2) {
    if (a1 >= a2) throw std::invalid_argument("pair_identity: need a1 < a2");
    Maya shifted = s.shifted(1);
    for (long a : {a1, a2})
        if (shifted.contains(a))
            throw std::invalid_argument("pair_identity: element " + std::to_string(a) +
                                        " lies in S+1");
    PairIdentityResult r;
    r.s1 = shifted.with({a1});
    r.s2 = shifted.with({a2});
    r.s3 = s;
    r.s4 = s.shifted(2).with({a1 + 1, a2 + 1});
    MultiPoly lhs = wr_t1({schur_from_maya(r.s1), schur_from_maya(r.s2)});
    MultiPoly rhs = schur_from_maya(r.s3) * schur_from_maya(r.s4);
    r.verified = (lhs == rhs);
    return r;
}

// Signed variant used for tuple mutations: Wr_{t_1}(F_{S_i}, F_{S̃_i}) =
// ± F_{S_{i-1}} F_{S_{i+1}}.  Returns +1 / -1 when the identity holds with
// that sign, std::nullopt otherwise.
inline std::optional<int> signed_pair_identity(const Maya& f1, const Maya& f2,
                                               const Maya& g1, const Maya& g2) {
    MultiPoly lhs = wr_t1({schur_from_maya(f1), schur_from_maya(f2)});
    MultiPoly rhs = schur_from_maya(g1) * schur_from_maya(g2);
    if (lhs == rhs) return 1;
    if (lhs == -rhs) return -1;
    return std::nullopt;
}

// k-fold identities on g_1, ..., g_{s+1} (given as h-indices).  With
// V(i) = Wr(g_1,...,g_{s-k}, g_i) and W(i) = Wr(all g's except g_i):
//   (1) Wr(V(s-k+1), ..., V(s+1)) = Wr(g_1..g_{s-k})^k · Wr(g_1..g_{s+1})
//   (2) Wr(W(s-k+1), ..., W(s+1)) = (-1)^{k(k+1)/2} Wr(g_1..g_{s-k}) · Wr(g_1..g_{s+1})^k
// The sign in (2) is the parity of reversing the k+1 arguments; with the
// W's listed in decreasing order of i the identity is sign-free.
inline bool kfold_identities(const std::vector<int>& g_indices, int k, int s) {
    if (int(g_indices.size()) != s + 1)
        throw std::invalid_argument("kfold_identities: need s+1 functions");
    if (k < 0 || k > s) throw std::invalid_argument("kfold_identities: need 0 <= k <= s");
    std::vector<MultiPoly> g;
    for (int idx : g_indices) g.push_back(h_poly(idx));

    std::vector<MultiPoly> prefix(g.begin(), g.begin() + (s - k));
    MultiPoly wr_prefix = wr_t1(prefix);
    MultiPoly wr_all = wr_t1(g);

    std::vector<MultiPoly> vs;
    for (int i = s - k; i <= s; ++i) {
        std::vector<MultiPoly> args = prefix;
        args.push_back(g[i]);
        vs.push_back(wr_t1(args));
    }
    MultiPoly rhs1 = wr_all;
    for (int p = 0; p < k; ++p) rhs1 = rhs1 * wr_prefix;
    if (!(wr_t1(vs) == rhs1)) return false;

    std::vector<MultiPoly> ws;
    for (int i = s - k; i <= s; ++i) {
        std::vector<MultiPoly> args;
        for (int j = 0; j <= s; ++j)
            if (j != i) args.push_back(g[j]);
        ws.push_back(wr_t1(args));
    }
    MultiPoly rhs2 = wr_prefix;
    for (int p = 0; p < k; ++p) rhs2 = rhs2 * wr_all;
    if ((k * (k + 1) / 2) % 2 == 1) rhs2 = -rhs2;
    return wr_t1(ws) == rhs2;
}

// Wr(Wr(f..., g1), Wr(f..., g2)) = Wr(f...) · Wr(f..., g1, g2).
inline bool lemma_mv_check(const std::vector<MultiPoly>& fs, const MultiPoly& g1,
                           const MultiPoly& g2) {
    std::vector<MultiPoly> a1 = fs, a2 = fs, a12 = fs;
    a1.push_back(g1);
    a2.push_back(g2);
    a12.push_back(g1);
    a12.push_back(g2);
    MultiPoly lhs = wr_t1({wr_t1(a1), wr_t1(a2)});
    MultiPoly rhs = wr_t1(fs) * wr_t1(a12);
    return lhs == rhs;
}

// ------------------- scalar differential operator D_S -------------------

// Differential operator Σ c_k (d/dx)^k with rational-function coefficients.
struct DiffOpQ {
    std::vector<RatQ> c;  // index = derivative order

    static DiffOpQ identity() { return DiffOpQ{{RatQ(1)}}; }

    // (d/dx - a) ∘ this
    DiffOpQ compose_left_factor(const RatQ& a) const {
        std::vector<RatQ> out(c.size() + 1, RatQ(0));
        for (size_t k = 0; k < c.size(); ++k) {
            out[k + 1] += c[k];
            out[k] += c[k].derivative() - a * c[k];
        }
        return DiffOpQ{std::move(out)};
    }

    RatQ apply(const RatQ& f) const {
        RatQ out(0), d = f;
        for (size_t k = 0; k < c.size(); ++k) {
            out += c[k] * d;
            d = d.derivative();
        }
        return out;
    }

    friend bool operator==(const DiffOpQ& a, const DiffOpQ& b) {
        size_t n = std::max(a.c.size(), b.c.size());
        for (size_t k = 0; k < n; ++k) {
            RatQ ca = k < a.c.size() ? a.c[k] : RatQ(0);
            RatQ cb = k < b.c.size() ? b.c[k] : RatQ(0);
            if (!(ca == cb)) return false;
        }
        return true;
    }
};

// Evaluates F_{S}(x; t) = F_S(t_1 = x + t[0], t_2 = t[1], ...).
inline PolyQ schur_eval_x(const Maya& s, const std::vector<Rational>& t_sample) {
    const MultiPoly& f = schur_from_maya(s);
    std::vector<Rational> rest(t_sample.begin() + (t_sample.empty() ? 0 : 1),
                               t_sample.end());
    PolyQ subst = PolyQ::x() + PolyQ(t_sample.empty() ? Rational(0) : t_sample[0]);
    return f.specialize_t1(subst, rest);
}

// D_S = (d/dx - log'(F_{S_N}/F_{S_{N-1}})) ... (d/dx - log'(F_{S_1}/F_{S_N}))
// with all Schur polynomials evaluated at the rational sample t.
inline DiffOpQ build_DS_operator(const MKdVSetTuple& t, const std::vector<Rational>& t_sample) {
    int n = t.N;
    std::vector<PolyQ> f(n);
    for (int i = 0; i < n; ++i) {
        f[i] = schur_eval_x(t.members[i], t_sample);
        if (f[i].is_zero())
            throw std::domain_error("build_DS_operator: F_{S_" + std::to_string(i + 1) +
                                    "} vanishes at t_sample; choose a different sample");
    }
    DiffOpQ op = DiffOpQ::identity();
    for (int i = 1; i <= n; ++i) {  // rightmost factor first: ratio F_i / F_{i-1}
        const PolyQ& num = f[i - 1];
        const PolyQ& den = f[(i - 2 + n) % n];
        RatQ a = log_deriv(RatQ(num, den));
        op = op.compose_left_factor(a);
    }
    return op;
}

// Default-sample variant: draws t from a deterministic seeded stream of small
// rationals, resampling on degenerate evaluations (retry cap 8).
inline DiffOpQ build_DS_operator(const MKdVSetTuple& t, std::uint64_t seed = 20260823) {
    int depth = 1;
    for (const Maya& m : t.members)
        depth = std::max(depth, schur_from_maya(m).nvars());
    Sampler sampler(seed);
    for (int attempt = 0; attempt < 8; ++attempt) {
        std::vector<Rational> ts = sampler.rationals(size_t(depth), 5);
        try {
            return build_DS_operator(t, ts);
        } catch (const std::domain_error&) {
            continue;
        }
    }
    throw std::domain_error("build_DS_operator: no generic sample found in 8 tries");
}

} // namespace mkdv
