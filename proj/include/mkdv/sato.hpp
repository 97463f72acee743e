// Grassmannian subspaces spanned by Laurent polynomials, their tau-functions
// (determinant and Wronskian forms), the correspondence with polynomial
// subspaces and the Wronsky map, tau-level Wronskian pair identities, mKdV
// tuples of subspaces with normalized generation and reduction, and the
// bridge back to generated critical-point tuples.
#pragma once

#include "genpop.hpp"
#include "miura.hpp"

namespace mkdv {

// ------------------------------ Laurent vectors ------------------------------

// Finite Q-linear combination of powers z^i, i in Z.
class LaurentVec {
public:
    LaurentVec() = default;
    explicit LaurentVec(std::map<int, Rational> terms) : t_(std::move(terms)) { prune(); }

    static LaurentVec z_pow(int k) {
        LaurentVec v;
        v.t_[k] = Rational(1);
        return v;
    }

    const std::map<int, Rational>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }

    Rational coeff(int i) const {
        auto it = t_.find(i);
        return it == t_.end() ? Rational(0) : it->second;
    }

    int order() const {  // min degree with nonzero coefficient
        if (t_.empty()) throw std::domain_error("LaurentVec: order of zero vector");
        return t_.begin()->first;
    }
    int max_degree() const {
        if (t_.empty()) throw std::domain_error("LaurentVec: degree of zero vector");
        return t_.rbegin()->first;
    }

    LaurentVec shifted(int k) const {  // multiplication by z^k
        LaurentVec v;
        for (const auto& [i, c] : t_) v.t_[i + k] = c;
        return v;
    }

    // Drops all terms of degree > max_deg (reduction against the implicit
    // z^j basis vectors of a subspace frame).
    LaurentVec clipped(int max_deg) const {
        LaurentVec v;
        for (const auto& [i, c] : t_)
            if (i <= max_deg) v.t_[i] = c;
        return v;
    }

    LaurentVec operator-() const {
        LaurentVec v(*this);
        for (auto& [i, c] : v.t_) c = -c;
        return v;
    }
    friend LaurentVec operator+(const LaurentVec& a, const LaurentVec& b) {
        LaurentVec v(a);
        for (const auto& [i, c] : b.t_) v.t_[i] += c;
        v.prune();
        return v;
    }
    friend LaurentVec operator-(const LaurentVec& a, const LaurentVec& b) { return a + (-b); }
    friend LaurentVec operator*(const Rational& s, const LaurentVec& a) {
        if (s.is_zero()) return LaurentVec();
        LaurentVec v(a);
        for (auto& [i, c] : v.t_) c *= s;
        return v;
    }
    friend bool operator==(const LaurentVec& a, const LaurentVec& b) { return a.t_ == b.t_; }
    friend bool operator!=(const LaurentVec& a, const LaurentVec& b) { return !(a == b); }

    std::string str() const {
        if (t_.empty()) return "0";
        std::string s;
        for (const auto& [i, c] : t_) {
            if (!s.empty()) s += " + ";
            s += "(" + c.str() + ")z^" + std::to_string(i);
        }
        return s;
    }

private:
    void prune() {
        for (auto it = t_.begin(); it != t_.end();)
            it = it->second.is_zero() ? t_.erase(it) : std::next(it);
    }

    std::map<int, Rational> t_;
};

// ------------------------- Grassmannian subspaces ---------------------------

// W = span(v_0, ..., v_n) + span(z^j : j > n), held in canonical form: the
// explicit vectors are clipped at degree n, have strictly increasing orders,
// leading coefficient 1, zero coefficients at the other pivot orders, and the
// top explicit vectors equal to pure powers z^j are absorbed into the
// implicit part (so equal subspaces compare equal componentwise).  The order
// subset is automatically of virtual cardinal zero.  n = -1 is H_+ itself.
struct GrSpace {
    int n = -1;
    std::vector<LaurentVec> basis;

    friend bool operator==(const GrSpace& a, const GrSpace& b) {
        return a.n == b.n && a.basis == b.basis;
    }
    friend bool operator!=(const GrSpace& a, const GrSpace& b) { return !(a == b); }
};

// Row-echelon elimination frame over the degrees <= n, with full reduction
// against monic pivot rows keyed by order.
struct PivotFrame {
    int n;
    std::map<int, LaurentVec> pivots;

    explicit PivotFrame(int n_) : n(n_) {}

    LaurentVec reduce(LaurentVec v) const {
        v = v.clipped(n);
        // Each pivot is supported at degrees >= its order, so the increasing
        // sweep never reintroduces a cleared coefficient.
        for (const auto& [o, p] : pivots) {
            Rational c = v.coeff(o);
            if (!c.is_zero()) v = v - c * p;
        }
        return v;
    }

    // Reduces and stores as a new monic pivot; false if v is in the span.
    bool insert(const LaurentVec& v) {
        LaurentVec r = reduce(v);
        if (r.is_zero()) return false;
        int o = r.order();
        pivots[o] = Rational(1) / r.coeff(o) * r;
        return true;
    }

    // Clears every pivot-order coefficient of every pivot (top order first,
    // so higher pivots are already fully reduced when they are subtracted).
    void mutual_reduce() {
        for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
            for (auto jt = std::next(it); jt != pivots.rend(); ++jt) {
                Rational c = jt->second.coeff(it->first);
                if (!c.is_zero()) jt->second = jt->second - c * it->second;
            }
        }
    }
};

// Canonical form of span(rows) + span(z^j : j > n).  Requires the rows to be
// independent modulo the implicit part (an (n+1)-dimensional explicit span).
inline GrSpace gr_canonicalize(int n, const std::vector<LaurentVec>& rows) {
    if (int(rows.size()) != n + 1)
        throw std::invalid_argument("gr_canonicalize: need n+1 explicit vectors");
    PivotFrame f(n);
    for (const LaurentVec& r : rows)
        if (!f.insert(r))
            throw std::invalid_argument("gr_canonicalize: dependent basis vectors");
    f.mutual_reduce();
    GrSpace w;
    w.n = n;
    for (auto& [o, p] : f.pivots) w.basis.push_back(std::move(p));
    while (w.n >= 0 && w.basis.back() == LaurentVec::z_pow(w.n)) {
        w.basis.pop_back();
        --w.n;
    }
    return w;
}

// Same subspace described at a higher explicit level m >= n.
inline GrSpace gr_promoted(const GrSpace& w, int m) {
    if (m < w.n) throw std::invalid_argument("gr_promoted: cannot demote");
    GrSpace out = w;
    for (int j = w.n + 1; j <= m; ++j) out.basis.push_back(LaurentVec::z_pow(j));
    out.n = m;
    return out;
}

inline LaurentVec gr_reduce(const GrSpace& w, const LaurentVec& v) {
    LaurentVec r = v.clipped(w.n);
    for (const LaurentVec& p : w.basis) {
        Rational c = r.coeff(p.order());
        if (!c.is_zero()) r = r - c * p;
    }
    return r;
}

inline bool gr_contains(const GrSpace& w, const LaurentVec& v) {
    return gr_reduce(w, v).is_zero();
}

inline Maya order_subset(const GrSpace& w) {
    std::vector<long> head;
    for (const LaurentVec& v : w.basis) head.push_back(v.order());
    return Maya::from_parts(std::move(head), w.n + 1);
}

inline Partition gr_partition(const GrSpace& w) {
    return maya_to_partition(order_subset(w));
}

// W_S: the subspace spanned by the pure powers z^s, s in S.
inline GrSpace gr_from_maya(const Maya& s) {
    if (!s.is_virtual_cardinal_zero())
        throw std::invalid_argument("gr_from_maya: virtual cardinal != 0");
    std::vector<LaurentVec> rows;
    for (long v : s.head()) rows.push_back(LaurentVec::z_pow(int(v)));
    return gr_canonicalize(int(s.tail()) - 1, rows);
}

// z^k W + span(extras) with |extras| = k, the shift construction that keeps
// the virtual cardinal at zero.
inline GrSpace gr_extend(const GrSpace& w, int k, const std::vector<LaurentVec>& extras) {
    if (int(extras.size()) != k)
        throw std::invalid_argument("gr_extend: need exactly k additional vectors");
    std::vector<LaurentVec> rows;
    for (const LaurentVec& v : w.basis) rows.push_back(v.shifted(k));
    for (const LaurentVec& v : extras) rows.push_back(v);
    return gr_canonicalize(w.n + k, rows);
}

// ------------------------------- tau-functions -------------------------------

// Determinant tau of an arbitrary (not necessarily canonical) explicit basis
// at level n: entry (j, b) = sum_i v_{j,i} h_{b-i}.  Multilinear in the rows,
// which is what the generation pencils rely on.
inline MultiPoly tau_raw(int n, const std::vector<LaurentVec>& rows) {
    if (int(rows.size()) != n + 1)
        throw std::invalid_argument("tau_raw: need n+1 rows");
    if (rows.empty()) return MultiPoly(1);
    std::vector<std::vector<MultiPoly>> m(rows.size(), std::vector<MultiPoly>(rows.size()));
    for (size_t j = 0; j < rows.size(); ++j) {
        LaurentVec r = rows[j].clipped(n);
        for (int b = 0; b <= n; ++b) {
            MultiPoly e;
            for (const auto& [i, c] : r.terms()) e = e + c * h_poly(b - i);
            m[j][size_t(b)] = std::move(e);
        }
    }
    return ring_determinant(m);
}

// Tau-function of a canonical subspace.  Both the determinant form and the
// Wronskian form Wr_{t_1}(g_0, ..., g_n) with g_j = sum_i v_{j,i} h_{n-i} are
// computed and compared; a disagreement would be a logic error.
inline MultiPoly tau(const GrSpace& w) {
    if (w.n < 0) return MultiPoly(1);
    MultiPoly det_form = tau_raw(w.n, w.basis);
    std::vector<MultiPoly> g;
    for (const LaurentVec& v : w.basis) {
        MultiPoly e;
        for (const auto& [i, c] : v.terms()) e = e + c * h_poly(w.n - i);
        g.push_back(std::move(e));
    }
    if (!(wr_t1(g) == det_form))
        throw std::logic_error("tau: determinant and Wronskian forms disagree");
    return det_form;
}

// Coefficient of the pure monomial t_1^k (all other variables to power 0).
inline Rational t1_monomial_coeff(const MultiPoly& p, int k) {
    for (const auto& [e, c] : p.terms()) {
        if ((e.empty() ? 0 : e[0]) != k) continue;
        bool pure = true;
        for (size_t v = 1; v < e.size(); ++v)
            if (e[v] != 0) { pure = false; break; }
        if (pure) return c;
    }
    return Rational(0);
}

// Monic-in-t_1 normalization; the t_1-degree equals the partition weight and
// its leading coefficient is a nonzero number.
inline MultiPoly tau_normalized(const GrSpace& w) {
    MultiPoly t = tau(w);
    int d = int(gr_partition(w).weight());
    if (t.degree(0) != d)
        throw std::logic_error("tau_normalized: t_1-degree does not match the partition weight");
    MultiPoly lead = t.coeff_of(0, d);
    if (!lead.is_constant() || lead.constant_term().is_zero())
        throw std::logic_error("tau_normalized: leading t_1-coefficient is not a nonzero number");
    return Rational(1) / lead.constant_term() * t;
}

// --------------------- polynomial subspaces in C[x] -------------------------

struct PolySubspace {
    int n = -1;
    Partition lambda;
    std::vector<PolyQ> f;  // special basis, deg f_j = lambda_j + n - j
};

inline PolyQ poly_integral(const PolyQ& p) {
    std::vector<Rational> c(size_t(p.degree()) + 2, Rational(0));
    for (int i = 0; i <= p.degree(); ++i)
        c[size_t(i) + 1] = p.coeff(i) / Rational(i + 1);
    return PolyQ(std::move(c));
}

// f_j(x) = sum_i v_{j,n-i} x^i / i! at explicit level m >= W.n (>= 0).
inline PolySubspace gr_to_poly(const GrSpace& w, int m) {
    if (m < w.n || m < 0) throw std::invalid_argument("gr_to_poly: level too small");
    GrSpace wp = gr_promoted(w, m);
    PolySubspace out;
    out.n = m;
    out.lambda = gr_partition(w);
    for (const LaurentVec& v : wp.basis) {
        std::vector<Rational> c(size_t(m - v.order()) + 1, Rational(0));
        Rational fact(1);  // i!
        PolyQ f;
        for (int i = 0; i <= m - v.order(); ++i) {
            c[size_t(i)] = v.coeff(m - i) / fact;
            fact *= Rational(i + 1);
        }
        out.f.push_back(PolyQ(std::move(c)));
    }
    for (size_t j = 0; j < out.f.size(); ++j)
        if (out.f[j].degree() != int(out.lambda.part(j)) + out.n - int(j))
            throw std::logic_error("gr_to_poly: degree pattern violated");
    return out;
}

// Inverse: read v_{j,m-i} = i! [x^i] f_j and canonicalize at level m.
inline GrSpace poly_to_gr(const PolySubspace& v) {
    std::vector<LaurentVec> rows;
    for (const PolyQ& f : v.f) {
        std::map<int, Rational> t;
        Rational fact(1);
        for (int i = 0; i <= f.degree(); ++i) {
            if (!f.coeff(i).is_zero()) t[v.n - i] = fact * f.coeff(i);
            fact *= Rational(i + 1);
        }
        rows.push_back(LaurentVec(std::move(t)));
    }
    return gr_canonicalize(v.n, rows);
}

// Wr(f_0, ..., f_n) / prod_{i<j} (lambda_j - lambda_i + i - j); monic of
// degree |lambda|.
inline PolyQ wronsky_map(const PolySubspace& v) {
    // The canonical basis element of degree d has leading coefficient 1/d!,
    // and the Wronskian contributes a Vandermonde factor in the degrees, so
    // dividing by both yields a monic polynomial of degree |lambda|.
    Rational denom(1);
    int n = int(v.f.size()) - 1;
    for (int i = 0; i <= n; ++i) {
        long d = v.lambda.part(size_t(i)) + long(n) - long(i);
        for (long q = 2; q <= d; ++q) denom /= Rational(q);
        for (int j = i + 1; j <= n; ++j)
            denom *= Rational(v.lambda.part(size_t(j)) - v.lambda.part(size_t(i)) +
                              long(i) - long(j));
    }
    return Rational(1) / denom * wronskian(v.f);
}

// tau_W(t_1 = x, t = 0), computed by specialization and cross-checked against
// Wr(f_0(-x), ..., f_n(-x)) through the polynomial-subspace route.
inline PolyQ tau_at_t0(const GrSpace& w) {
    MultiPoly t = tau(w);
    std::vector<Rational> zeros(size_t(std::max(t.nvars() - 1, 0)), Rational(0));
    PolyQ spec = t.specialize_t1(PolyQ::x(), zeros);
    if (w.n >= 0) {
        PolySubspace v = gr_to_poly(w, w.n);
        std::vector<PolyQ> fneg;
        for (const PolyQ& f : v.f)
            fneg.push_back(f.compose(PolyQ::monomial(1, Rational(-1))));
        if (!(wronskian(fneg) == spec))
            throw std::logic_error("tau_at_t0: specialization and Wronskian routes disagree");
    }
    return spec;
}

// Polynomial shift of the tau-function: tau_{gW}(t) = tau_W(t + shift) for
// g = exp(sum shift_k z^k).
inline MultiPoly flow_shift(const GrSpace& w, const std::vector<Rational>& shift) {
    MultiPoly t = tau(w);
    for (size_t v = 0; v < shift.size(); ++v) t = t.shift_var(int(v), shift[v]);
    return t;
}

// ----------------------- tau-level pair identity ----------------------------

struct TauPairResult {
    GrSpace w1, w2, w3, w4;
    MultiPoly lhs, rhs;  // Wr(tau_1, tau_2) and tau_3 tau_4
    Rational konst;
    bool verified = false;
};

// W_1 = zW + <v_1>, W_2 = zW + <v_2>, W_3 = W, W_4 = z^2 W + <z v_1, z v_2>;
// then Wr_{t_1}(tau_{W_1}, tau_{W_2}) = const tau_{W_3} tau_{W_4} with a
// nonzero number const.  Requires ord v_1 < ord v_2 both outside S+1.
inline TauPairResult tau_pair_identity(const GrSpace& w, const LaurentVec& v1,
                                       const LaurentVec& v2) {
    if (v1.is_zero() || v2.is_zero())
        throw std::invalid_argument("tau_pair_identity: zero vector");
    int a1 = v1.order(), a2 = v2.order();
    if (a1 >= a2) throw std::invalid_argument("tau_pair_identity: need ord v1 < ord v2");
    Maya s1 = order_subset(w).shifted(1);
    for (int a : {a1, a2})
        if (s1.contains(a))
            throw std::invalid_argument("tau_pair_identity: order " + std::to_string(a) +
                                        " lies in S+1");
    TauPairResult r;
    r.w1 = gr_extend(w, 1, {v1});
    r.w2 = gr_extend(w, 1, {v2});
    r.w3 = w;
    r.w4 = gr_extend(w, 2, {v1.shifted(1), v2.shifted(1)});
    r.lhs = wr_t1({tau(r.w1), tau(r.w2)});
    r.rhs = tau(r.w3) * tau(r.w4);
    if (r.rhs.is_zero()) throw std::logic_error("tau_pair_identity: vanishing product");
    // Read the constant off one monomial, then certify by exact equality.
    int nv = std::max(r.lhs.nvars(), r.rhs.nvars());
    MultiPoly lhs_p = r.lhs.promoted(nv), rhs_p = r.rhs.promoted(nv);
    const auto& [e0, c0] = *rhs_p.terms().begin();
    auto it = lhs_p.terms().find(e0);
    r.konst = it == lhs_p.terms().end() ? Rational(0) : it->second / c0;
    r.verified = (r.lhs == r.konst * r.rhs);
    return r;
}

// --------------------------- mKdV tuples of subspaces ------------------------

struct GrTuple {
    int N = 0;
    std::vector<GrSpace> members;  // W_1, ..., W_N with z W_i in W_{i+1} cyclically

    static GrTuple empty_tuple(int n) {
        GrTuple t;
        t.N = n;
        t.members.assign(size_t(n), GrSpace{});
        return t;
    }

    const GrSpace& at(int i) const {  // 1-based cyclic
        int idx = ((i - 1) % N + N) % N;
        return members[size_t(idx)];
    }

    bool is_empty_tuple() const {
        for (const GrSpace& w : members)
            if (!(w == GrSpace{})) return false;
        return true;
    }

    friend bool operator==(const GrTuple& a, const GrTuple& b) {
        return a.N == b.N && a.members == b.members;
    }
    friend bool operator!=(const GrTuple& a, const GrTuple& b) { return !(a == b); }
};

inline bool gr_tuple_valid(const GrTuple& t) {
    if (t.N < 2 || int(t.members.size()) != t.N) return false;
    for (int i = 1; i <= t.N; ++i) {
        const GrSpace& a = t.at(i);
        const GrSpace& b = t.at(i + 1);
        for (const LaurentVec& v : a.basis)
            if (!gr_contains(b, v.shifted(1))) return false;
        // Implicit generators z^j of W_i with j+1 not implicit in W_{i+1}.
        for (int j = a.n + 1; j + 1 <= b.n; ++j)
            if (!gr_contains(b, LaurentVec::z_pow(j + 1))) return false;
    }
    return true;
}

inline MKdVSetTuple order_tuple(const GrTuple& t) {
    std::vector<Maya> m;
    for (const GrSpace& w : t.members) m.push_back(order_subset(w));
    return MKdVSetTuple(std::move(m), t.N);
}

// The two-dimensional pencil governing generation in direction i:
// zW_{i-1} (codimension one in the frame), a generator v0 of W_i over it, and
// a generator v1 of z^{-1}W_{i+1} over W_i, both fully reduced.  By row
// multilinearity, tau of the line <v1 + g v0> over zW_{i-1} is tau_a + g tau_b.
struct GrPencil {
    int n = -1;                     // frame level
    std::vector<LaurentVec> base;   // n rows spanning zW_{i-1}
    LaurentVec v0, v1;
    MultiPoly tau_b;                // tau_raw(base, v0): a multiple of tau_{W_i}
    MultiPoly tau_a;                // tau_raw(base, v1)
};

inline GrPencil gr_pencil(const GrTuple& t, int i) {
    const GrSpace& wp = t.at(i - 1);
    const GrSpace& wi = t.at(i);
    const GrSpace& wn = t.at(i + 1);
    GrPencil p;
    p.n = std::max({wp.n + 1, wi.n, wn.n - 1});

    PivotFrame frame(p.n);
    for (const LaurentVec& v : wp.basis) {
        p.base.push_back(v.shifted(1));
        frame.insert(p.base.back());
    }
    for (int j = wp.n + 2; j <= p.n; ++j) {
        p.base.push_back(LaurentVec::z_pow(j));
        frame.insert(p.base.back());
    }
    if (int(p.base.size()) != p.n || int(frame.pivots.size()) != p.n)
        throw std::invalid_argument("gr_pencil: zW_{i-1} is not of codimension one");

    auto pick_new = [&frame](const std::vector<LaurentVec>& cands, const char* what) {
        LaurentVec found;
        for (const LaurentVec& c : cands) {
            LaurentVec r = frame.reduce(c);
            if (r.is_zero()) continue;
            if (!found.is_zero())
                throw std::invalid_argument(std::string("gr_pencil: ") + what +
                                            " violates the chain condition");
            found = Rational(1) / r.coeff(r.order()) * r;
            frame.pivots[found.order()] = found;
        }
        if (found.is_zero())
            throw std::invalid_argument(std::string("gr_pencil: ") + what +
                                        " adds no new direction");
        return found;
    };

    std::vector<LaurentVec> ci = wi.basis;
    for (int j = wi.n + 1; j <= p.n; ++j) ci.push_back(LaurentVec::z_pow(j));
    p.v0 = pick_new(ci, "W_i over zW_{i-1}");

    std::vector<LaurentVec> cn;
    for (const LaurentVec& v : wn.basis) cn.push_back(v.shifted(-1));
    for (int j = wn.n; j <= p.n; ++j) cn.push_back(LaurentVec::z_pow(j));
    p.v1 = pick_new(cn, "z^{-1}W_{i+1} over W_i");

    std::vector<LaurentVec> rows = p.base;
    rows.push_back(p.v0);
    p.tau_b = tau_raw(p.n, rows);
    rows.back() = p.v1;
    p.tau_a = tau_raw(p.n, rows);
    return p;
}

namespace detail {
// Leading t_1-coefficients of the pencil taus; throws unless the direction is
// degree increasing.
struct PencilDegrees {
    int k_small = 0, k_big = 0;
    Rational lead_a, lead_b;
};
inline PencilDegrees pencil_degrees(const GrPencil& p, int i) {
    PencilDegrees d;
    d.k_small = p.tau_b.degree(0);
    d.k_big = p.tau_a.degree(0);
    if (d.k_big <= d.k_small)
        throw std::invalid_argument("generate_tuple_step: direction " + std::to_string(i) +
                                    " is not degree increasing");
    d.lead_a = t1_monomial_coeff(p.tau_a, d.k_big);
    d.lead_b = t1_monomial_coeff(p.tau_b, d.k_small);
    if (d.lead_a.is_zero() || d.lead_b.is_zero())
        throw std::logic_error("generate_tuple_step: leading coefficient is not a number");
    return d;
}
inline GrTuple replace_member(const GrTuple& t, int i, GrSpace w) {
    GrTuple out = t;
    out.members[size_t(((i - 1) % t.N + t.N) % t.N)] = std::move(w);
    return out;
}
}  // namespace detail

// Raw generation step: the line <v1 + c v0> over zW_{i-1}, with the
// deterministic fully-reduced representatives of the pencil.
inline GrTuple generate_tuple_step(const GrTuple& t, int i, const Rational& c) {
    GrPencil p = gr_pencil(t, i);
    detail::pencil_degrees(p, i);
    std::vector<LaurentVec> rows = p.base;
    rows.push_back(p.v1 + c * p.v0);
    return detail::replace_member(t, i, gr_canonicalize(p.n, rows));
}

// Normalized generation step: the coordinate c is pinned so that the
// normalized taus satisfy tau~(c) = tau~_{i,0} + c tau~_{W_i}, where
// tau~_{i,0}(t_1, t=0) has zero coefficient at t_1^{deg tau~_{W_i}} — the
// same pinning the critical-point generation uses for y_{j,0}.
inline GrTuple generate_tuple_step_normalized(const GrTuple& t, int i, const Rational& c) {
    GrPencil p = gr_pencil(t, i);
    detail::PencilDegrees d = detail::pencil_degrees(p, i);
    // tau~(gamma) = tau_a/lead_a + gamma (lead_b/lead_a) tau~_{W_i}; alpha is
    // the stray t_1^{k_small} coefficient of the gamma = 0 member.
    Rational alpha = t1_monomial_coeff(p.tau_a, d.k_small) / d.lead_a;
    Rational gamma = (c - alpha) * d.lead_a / d.lead_b;
    std::vector<LaurentVec> rows = p.base;
    rows.push_back(p.v1 + gamma * p.v0);
    return detail::replace_member(t, i, gr_canonicalize(p.n, rows));
}

inline GrTuple generate_tuple_multi(int n, const GenSeq& J, const std::vector<Rational>& c) {
    if (!is_degree_increasing(J, n))
        throw std::invalid_argument("generate_tuple_multi: sequence is not degree increasing");
    if (c.size() != J.size())
        throw std::invalid_argument("generate_tuple_multi: need one coordinate per step");
    GrTuple t = GrTuple::empty_tuple(n);
    for (size_t m = 0; m < J.size(); ++m)
        t = generate_tuple_step_normalized(t, J[m], c[m]);
    return t;
}

// ------------------- correspondence with critical points --------------------

// Normalized taus of the tuple at a fixed parameter sample, as monic
// polynomials in x (the t_1-shift convention of the Miura-oper formula).
inline PolyTuple tau_family_map(const GrTuple& t, const std::vector<Rational>& t_sample) {
    std::vector<PolyQ> ys;
    for (const GrSpace& w : t.members) {
        MultiPoly tn = tau_normalized(w);
        if (int(t_sample.size()) < tn.nvars())
            throw std::invalid_argument("tau_family_map: sample has too few coordinates");
        std::vector<Rational> rest(t_sample.begin() + 1, t_sample.end());
        PolyQ subst = PolyQ::x() + PolyQ(t_sample.empty() ? Rational(0) : t_sample[0]);
        ys.push_back(tn.specialize_t1(subst, rest));
    }
    return PolyTuple(t.N, std::move(ys));
}

// The keystone identity Y^J(c) = (tau~_{W_i(c)}(t_1 = x, t = 0))_i: both
// generation pipelines are run on the same data and compared exactly.
inline bool x_equals_y_check(int n, const GenSeq& J, const std::vector<Rational>& c) {
    PolyTuple y = generate_multi(n, J, c);
    GrTuple t = generate_tuple_multi(n, J, c);
    for (int i = 0; i < n; ++i) {
        MultiPoly tn = tau_normalized(t.members[size_t(i)]);
        std::vector<Rational> zeros(size_t(std::max(tn.nvars() - 1, 0)), Rational(0));
        if (!(tn.specialize_t1(PolyQ::x(), zeros) == y.ys[size_t(i)])) return false;
    }
    return true;
}

// Pointwise check that the tau family at a parameter sample is induced from
// the critical-point generation: runs the tuple generation stepwise, reads
// the matching coordinate c'_m off each intermediate tau evaluation, and
// verifies Y^J(c') reproduces it exactly.  Returns c'.
inline std::vector<Rational> tau_family_pullback(int n, const GenSeq& J,
                                                 const std::vector<Rational>& c,
                                                 const std::vector<Rational>& t_sample) {
    if (!is_degree_increasing(J, n) || c.size() != J.size())
        throw std::invalid_argument("tau_family_pullback: bad generation data");
    GrTuple t = GrTuple::empty_tuple(n);
    PolyTuple y = PolyTuple::constant_tuple(n);
    std::vector<Rational> cp;
    for (size_t m = 0; m < J.size(); ++m) {
        int j = J[m];
        int idx = ((j - 1) % n + n) % n;
        t = generate_tuple_step_normalized(t, j, c[m]);
        PolyTuple target = tau_family_map(t, t_sample);
        GenerationStep step = generate_step(y, j);
        long kj = std::max<long>(y.ys[size_t(idx)].degree(), 0);
        Rational cm = target.ys[size_t(idx)].coeff(int(kj));
        PolyQ built = step.y_j0 + PolyQ(std::vector<Rational>{cm}) * y.ys[size_t(idx)];
        if (!(built == target.ys[size_t(idx)]))
            throw std::runtime_error("tau_family_pullback: mismatch at step " +
                                     std::to_string(m + 1));
        y.ys[size_t(idx)] = built;
        cp.push_back(cm);
    }
    return cp;
}

// ------------------------------- reduction -----------------------------------

struct GrReductionTrace {
    GenSeq J;
    std::vector<Rational> c;
};

// Reduces a tuple to (H_+, ..., H_+), recording at each step the direction
// and the normalized coordinate from which the removed member regenerates.
// The mutated position follows the same rule as the order-subset reduction,
// so the trace replays through generate_tuple_multi.
inline GrReductionTrace reduce_gr_tuple(GrTuple t) {
    std::vector<int> picks;
    std::vector<Rational> cs;
    long guard = 16 * (order_tuple(t).total_weight() + 1);
    while (!t.is_empty_tuple()) {
        if (--guard < 0) throw std::logic_error("reduce_gr_tuple: no progress");
        MKdVSetTuple ot = order_tuple(t);
        auto [base, sigma] = decompose_tuple(ot);
        std::vector<long> a = leading_term(base);
        int n = t.N;
        std::vector<long> b;
        for (int i = 1; i <= n; ++i) b.push_back(a[size_t(sigma[size_t(i - 1)] - 1)] + i - n);
        long s_min = *std::min_element(b.begin(), b.end());
        int pick = -1;
        for (int i = 1; i <= n; ++i) {
            if (b[size_t(i - 1)] != s_min) continue;
            if (i < n && b[size_t(i)] == s_min) continue;
            pick = i;
            break;
        }
        if (pick < 0) throw std::logic_error("reduce_gr_tuple: no candidate");

        // In a degree-decreasing direction the fully reduced v1 spans the
        // unique lower-degree line (every other line keeps the order of v0).
        GrPencil p = gr_pencil(t, pick);
        int k_old = p.tau_b.degree(0);
        int k_new = p.tau_a.degree(0);
        if (k_new >= k_old) throw std::logic_error("reduce_gr_tuple: direction does not descend");
        Rational c = t1_monomial_coeff(tau_normalized(t.at(pick)), k_new);
        std::vector<LaurentVec> rows = p.base;
        rows.push_back(p.v1);
        t = detail::replace_member(t, pick, gr_canonicalize(p.n, rows));
        picks.push_back(pick);
        cs.push_back(c);
    }
    GrReductionTrace out;
    out.J.assign(picks.rbegin(), picks.rend());
    out.c.assign(cs.rbegin(), cs.rend());
    return out;
}

// ------------------------------ Wilson check ---------------------------------

struct WilsonReport {
    bool ok = false;
    DiagRF lhs;  // d/dt_r of the tau-built potential, from the polynomial taus
    DiagRF rhs;  // mkdv_vector_field of the same Miura oper
};

// Builds the Miura oper V = diag(log'(tau_i(x+t_1,t)/tau_{i-1}(x+t_1,t))) at
// the sample, differentiates the taus in t_r exactly, and compares with the
// r-th mKdV vector field.
inline WilsonReport verify_wilson(const GrTuple& t, int r,
                                  const std::vector<Rational>& t_sample,
                                  int k_depth = 0) {
    int n = t.N;
    std::vector<PolyQ> g, gdot;
    g.resize(size_t(n));
    gdot.resize(size_t(n));
    for (int i = 0; i < n; ++i) {
        MultiPoly tn = tau_normalized(t.members[size_t(i)]);
        if (int(t_sample.size()) < std::max(tn.nvars(), r))
            throw std::invalid_argument("verify_wilson: sample has too few coordinates");
        std::vector<Rational> rest(t_sample.begin() + 1, t_sample.end());
        PolyQ subst = PolyQ::x() + PolyQ(t_sample[0]);
        g[size_t(i)] = tn.specialize_t1(subst, rest);
        if (g[size_t(i)].is_zero())
            throw std::domain_error("verify_wilson: tau vanishes at the sample");
        gdot[size_t(i)] = tn.derivative(r - 1).specialize_t1(subst, rest);
    }
    std::vector<RatQ> v, vdot;
    v.resize(size_t(n));
    vdot.resize(size_t(n));
    for (int i = 0; i < n; ++i) {
        int prev = (i - 1 + n) % n;
        v[size_t(i)] = log_deriv(g[size_t(i)]) - log_deriv(g[size_t(prev)]);
        // d/dt_r log'(tau) = d/dx (tau_dot / tau). The generating convention
        // exp(-sum t_j z^j) behind h_poly orients t_r opposite to the r-th
        // hierarchy time when r is even, hence the (-1)^{r+1}.
        RatQ ratio = RatQ(gdot[size_t(i)], g[size_t(i)]) -
                     RatQ(gdot[size_t(prev)], g[size_t(prev)]);
        vdot[size_t(i)] = (r % 2 == 0) ? -ratio.derivative() : ratio.derivative();
    }
    WilsonReport rep;
    rep.lhs = DiagRF(std::move(vdot));
    rep.rhs = mkdv_vector_field(MiuraOper(DiagRF(std::move(v))), r,
                                k_depth > 0 ? k_depth : r + 2);
    rep.ok = (rep.lhs == rep.rhs);
    return rep;
}

// Seeded resampling wrapper for degenerate samples.
inline WilsonReport verify_wilson(const GrTuple& t, int r, Sampler& rng, int retries = 8) {
    int depth = r;
    for (const GrSpace& w : t.members)
        depth = std::max(depth, tau(w).nvars());
    for (int attempt = 0; attempt < retries; ++attempt) {
        std::vector<Rational> ts = rng.rationals(size_t(depth), 5);
        try {
            return verify_wilson(t, r, ts);
        } catch (const std::domain_error&) {
            continue;
        }
    }
    throw std::domain_error("verify_wilson: no generic sample found");
}

} // namespace mkdv
