// Acceptance suite: one pass/fail line per criterion, exit code 0 iff all
// pass.  Every structural check is exact rational arithmetic; only the Bethe
// residuals (criterion 5) are numeric, with the stated tolerance.
#include <chrono>
#include <cstdio>
#include <exception>
#include <functional>

#include <mkdv/kdv.hpp>
#include <mkdv/random_objects.hpp>
#include <mkdv/roots.hpp>
#include <mkdv/sato.hpp>

using namespace mkdv;

namespace {

int failures = 0;

void criterion(int index, const char* label, const std::function<bool()>& body) {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    const char* note = "";
    try {
        ok = body();
    } catch (const std::exception& e) {
        note = e.what();
    }
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("criterion %2d: %s  %-58s (%.1fs)%s%s\n", index,
                ok ? "PASS" : "FAIL", label, secs, *note ? "  " : "", note);
    std::fflush(stdout);
    if (!ok) ++failures;
}

PolyQ poly(std::vector<Rational> coeffs) { return PolyQ(std::move(coeffs)); }

// A random generated family (J, c) at the given arity and depth bound.
std::pair<GenSeq, std::vector<Rational>> random_family(Sampler& rng, int n, int max_m) {
    int m = int(rng.int_in(1, max_m));
    GenSeq j = random_degree_increasing_seq(rng, n, m);
    return {j, rng.rationals(size_t(m), 4)};
}

// --------------------------- criteria 1 and 2 ------------------------------

bool adler_moser() {
    Sampler rng(1);
    for (int trial = 0; trial < 20; ++trial) {
        Rational c1 = rng.rational(6), c2 = rng.rational(6);
        PolyTuple y = generate_multi(2, {1, 2}, {c1, c2});
        if (!(y.ys[0] == poly({c1, Rational(1)}))) return false;
        if (!(y.ys[1] == poly({c2, Rational(3) * c1 * c1, Rational(3) * c1,
                               Rational(1)})))
            return false;
    }
    return true;
}

bool n3_chain() {
    Sampler rng(2);
    for (int trial = 0; trial < 20; ++trial) {
        Rational c1 = rng.rational(6), c2 = rng.rational(6), c3 = rng.rational(6);
        PolyTuple y = generate_multi(3, {1, 2, 3}, {c1, c2, c3});
        if (!(y.ys[0] == poly({c1, Rational(1)}))) return false;
        if (!(y.ys[1] == poly({c2, Rational(2) * c1, Rational(1)}))) return false;
        if (!(y.ys[2] == poly({c3, Rational(4) * c1 * c2,
                               Rational(2) * c2 + Rational(4) * c1 * c1,
                               Rational(4) * c1, Rational(1)})))
            return false;
    }
    // degree-transformation chain for the cyclic sequence of length 6
    std::vector<std::vector<long>> expected{{0, 0, 0}, {1, 0, 0}, {1, 2, 0},
                                            {1, 2, 4}, {6, 2, 4}, {6, 9, 4},
                                            {6, 9, 12}};
    DegreeVec k{{0, 0, 0}};
    GenSeq j6 = cyclic_sequence(3, 6);
    for (size_t s = 0; s < j6.size(); ++s) {
        if (k.k != expected[s]) return false;
        k = degree_transform(k, j6[s]);
    }
    return k.k == expected.back() &&
           degree_vector_of(j6, 3).k == expected.back();
}

// ------------------------------ criterion 3 --------------------------------

bool schur_identities() {
    // printed pair identity: Wr(F_{(2,1)}, F_{()}) = F_{(1)} F_{(1)}
    auto r1 = pair_identity(partition_to_maya(Partition({1})), -2, 1);
    if (!r1.verified || !(maya_to_partition(r1.s1) == Partition({2, 1}))) return false;
    // printed pair identity: Wr(F_{(4,2,1)}, F_{(2,2,1)}) = F_{(3,2,2,1)} F_{(2,1)}
    auto r2 = pair_identity(partition_to_maya(Partition({2, 1})), -4, -2);
    if (!r2.verified || !(maya_to_partition(r2.s4) == Partition({3, 2, 2, 1})))
        return false;
    // printed sum identity
    if (!(schur(Partition({2})) + schur(Partition({1, 1})) ==
          schur(Partition({1})) * schur(Partition({1}))))
        return false;
    // printed 3-fold identities (second with the established reversal sign)
    MultiPoly f4 = schur(Partition({4}));
    MultiPoly f1111 = schur(Partition({1, 1, 1, 1}));
    MultiPoly lhs1 = wr_t1({schur(Partition({3, 3})), schur(Partition({3, 2})),
                            schur(Partition({3, 1}))});
    if (!(lhs1 == f4 * f4 * f1111)) return false;
    MultiPoly lhs2 = wr_t1({schur(Partition({2, 1, 1})), schur(Partition({2, 2, 1})),
                            schur(Partition({2, 2, 2}))});
    if (!(lhs2 == -(f4 * f1111 * f1111))) return false;

    // 200 randomized pair-identity instances, |lambda(S)| <= 8.  The added
    // orders are drawn near min(S+1) so the composite sets stay at desk-scale
    // weight; far-away orders only inflate the polynomials, not the coverage.
    Sampler rng(3);
    int done = 0;
    while (done < 200) {
        Maya s = partition_to_maya(random_partition(rng, 8));
        Maya shifted = s.shifted(1);
        long lo = shifted.min_element() - 2;
        long a1 = rng.int_in(lo, lo + 6), a2 = rng.int_in(lo, lo + 6);
        if (a1 >= a2 || shifted.contains(a1) || shifted.contains(a2)) continue;
        long w4 = maya_to_partition(s.shifted(2).with({a1 + 1, a2 + 1})).weight();
        if (w4 > 12) continue;
        if (!pair_identity(s, a1, a2).verified) return false;
        ++done;
    }
    return true;
}

// ------------------------------ criterion 4 --------------------------------

bool mutation_calculus() {
    // printed N = 3 mutation instance
    KdVSet s(Maya::from_parts({-3, 0, 1}, 3), 3);
    KdVSet m = mutate_kdv(s, 1);
    if (!(m.s == Maya::from_parts({-2, -1, 1, 2}, 4))) return false;
    if (!(leading_term(m) == std::vector<long>{-2, -1, 6})) return false;

    // 100 random KdV subsets reduce with strictly decreasing width
    Sampler rng(4);
    for (int trial = 0; trial < 100; ++trial) {
        int n = int(rng.int_in(2, 4));
        KdVSet k = random_kdv_set(rng, n, 40, 8);
        KdVSet cur = k;
        long width = kdv_width(cur);
        for (long a : reduce_kdv_to_empty(k)) {  // throws if width stalls
            cur = mutate_kdv(cur, a);
            long w = kdv_width(cur);
            if (!(cur.s == Maya()) && w >= width) return false;
            width = w;
        }
        if (!(cur.s == Maya())) return false;
    }

    // Weyl relations on 100 random tuples, N = 3, 4
    for (int trial = 0; trial < 100; ++trial) {
        int n = (trial % 2 == 0) ? 3 : 4;
        MKdVSetTuple t = random_mkdv_tuple(rng, n, 30);
        for (int i = 1; i <= n; ++i)
            if (!(mutate_tuple(mutate_tuple(t, i), i) == t)) return false;
        for (int i = 1; i <= n; ++i) {
            int ip = i % n + 1;
            MKdVSetTuple lhs = mutate_tuple(mutate_tuple(mutate_tuple(t, i), ip), i);
            MKdVSetTuple rhs = mutate_tuple(mutate_tuple(mutate_tuple(t, ip), i), ip);
            if (!(lhs == rhs)) return false;
        }
        if (n == 4)
            for (int i : {1, 2})
                if (!(mutate_tuple(mutate_tuple(t, i), i + 2) ==
                      mutate_tuple(mutate_tuple(t, i + 2), i)))
                    return false;
    }
    return true;
}

// ------------------------------ criterion 5 --------------------------------

bool bethe_residuals_small() {
    Sampler rng(5);
    int done = 0;
    while (done < 50) {
        int n = int(rng.int_in(2, 3));
        auto [j, c] = random_family(rng, n, 5);
        PolyTuple y = generate_multi(n, j, c);
        std::vector<Complex> res;
        try {
            res = bethe_residuals_of_tuple(y);
        } catch (const std::exception&) {
            continue;  // root collision at this sample; draw another family
        }
        for (const Complex& z : res)
            if (std::abs(z) >= 1e-9) return false;
        ++done;
    }
    return true;
}

// ------------------------------ criterion 6 --------------------------------

bool flow_vanishing() {
    Sampler rng(6);
    for (int trial = 0; trial < 30; ++trial) {
        int n = int(rng.int_in(2, 3));
        auto [j, c] = random_family(rng, n, 5);
        int m = int(j.size());
        TJResult tj = build_TJ(n, j, c);
        for (int r = 2 * m + 1; r <= 2 * m + 4; ++r)
            if (!mkdv_vector_field_exact(tj, r).is_zero()) return false;
    }
    return true;
}

// ------------------------------ criterion 7 --------------------------------

bool tangency() {
    // m = 1: the first flow is translation along c_1, higher flows vanish
    for (int n : {2, 3}) {
        TangencyReport t1 = verify_theorem_main(n, {1}, {Rational(3)}, 1);
        if (!t1.ok || t1.field_vanishes || !(t1.gamma == std::vector<Rational>{Rational(1)}))
            return false;
        for (int r = 2; r <= 6; ++r)
            if (!verify_theorem_main(n, {1}, {Rational(3)}, r).field_vanishes)
                return false;
    }

    Sampler rng(7);
    for (int n : {2, 3}) {
        for (int m = 1; m <= 4; ++m) {
            GenSeq j = cyclic_sequence(n, m);
            for (int point = 0; point < 5; ++point) {
                std::vector<Rational> c;
                for (int k = 0; k < m; ++k) c.push_back(rng.nonzero_rational(4));
                for (int r = 1; r <= 2 * m; ++r) {
                    // the dressing cross-check is covered by criterion 8 and
                    // is unaffordable inside this sweep at m = 4
                    if (!verify_theorem_main(n, j, c, r, /*check_dressing=*/m <= 2).ok)
                        return false;
                }
            }
        }
    }
    return true;
}

// ------------------------------ criterion 8 --------------------------------

bool gauge_independence() {
    Sampler rng(8);
    for (int trial = 0; trial < 20; ++trial) {
        int n = int(rng.int_in(2, 3));
        auto [j, c] = random_family(rng, n, 3);
        int r = int(rng.int_in(1, 4));
        TJResult tj = build_TJ(n, j, c);
        DressingResult d = dress(tj.mu, r + 3, /*verify=*/true);
        LaurentMat lhs = dressed_conjugate(d, r);
        LaurentMat rhs = tj.t * LaurentMat::lambda_power(n, r) * tj.tinv;
        if (!(lhs.truncated(lhs.floor) == rhs.truncated(lhs.floor))) return false;
    }
    return true;
}

// ------------------------------ criterion 9 --------------------------------

bool miura_pushforward() {
    std::vector<Rational> c{Rational(1), Rational(5), Rational(-2)};
    std::vector<GenSeq> families{{1}, {1, 2}, {1, 2, 1}};
    for (const GenSeq& j : families) {
        std::vector<Rational> cc(c.begin(), c.begin() + long(j.size()));
        for (int r = 1; r <= 5; ++r)
            for (int i = 1; i <= 2; ++i)
                if (!verify_mkdv_to_kdv(2, j, cc, r, i).ok) return false;
    }
    std::vector<Rational> c3{Rational(2), Rational(1, 3), Rational(-1)};
    for (int r = 1; r <= 3; ++r)
        for (int i = 1; i <= 3; ++i)
            if (!verify_mkdv_to_kdv(3, {1, 2, 3}, c3, r, i).ok) return false;
    return true;
}

// ------------------------------ criterion 10 -------------------------------

bool tau_keystone() {
    Sampler rng(10);
    for (int trial = 0; trial < 30; ++trial) {
        int n = int(rng.int_in(2, 3));
        auto [j, c] = random_family(rng, n, 5);
        if (!x_equals_y_check(n, j, c)) return false;
    }
    for (int trial = 0; trial < 50; ++trial) {
        Maya s = partition_to_maya(random_partition(rng, 8));
        if (!(tau(gr_from_maya(s)) == schur_from_maya(s))) return false;
    }
    return true;
}

// ------------------------------ criterion 11 -------------------------------

bool tau_pair() {
    Sampler rng(11);
    int done = 0;
    while (done < 100) {
        Partition lambda = random_partition(rng, 3);
        GrSpace w = (lambda.parts.empty() && rng.int_in(0, 1) == 0)
                        ? GrSpace{}
                        : gr_from_maya(partition_to_maya(lambda));
        Maya s1 = order_subset(w).shifted(1);
        int a1 = int(s1.min_element()) - 1 - int(rng.int_in(0, 1));
        int a2 = a1 + 1 + int(rng.int_in(0, 1));
        while (s1.contains(a2)) ++a2;
        LaurentVec v1 = LaurentVec::z_pow(a1) + rng.rational(3) * LaurentVec::z_pow(a1 + 2);
        LaurentVec v2 = LaurentVec::z_pow(a2) + rng.rational(3) * LaurentVec::z_pow(a2 + 2);
        TauPairResult r = tau_pair_identity(w, v1, v2);
        if (!r.verified || r.konst.is_zero()) return false;
        ++done;
    }
    return true;
}

// ------------------------------ criterion 12 -------------------------------

bool wilson_consistency() {
    Sampler rng(12);
    for (int n : {2, 3}) {
        for (int rep = 0; rep < 2; ++rep) {
            GenSeq j = random_degree_increasing_seq(rng, n, 2);
            GrTuple t = generate_tuple_multi(n, j, rng.rationals(j.size(), 4));
            for (int r = 1; r <= 4; ++r)
                for (int sample = 0; sample < 3; ++sample)
                    if (!verify_wilson(t, r, rng).ok) return false;
        }
    }
    return true;
}

// ------------------------------ criterion 13 -------------------------------

bool ds_operator() {
    // worked N = 3 instance: kernel membership and permutation independence
    KdVSet s = from_leading_term({-1, 0, 4}, 3);
    std::vector<Rational> ts{Rational(1, 3), Rational(2), Rational(-1, 2),
                             Rational(1),    Rational(3, 4), Rational(-2),
                             Rational(1, 5), Rational(2, 7)};
    DiffOpQ op = build_DS_operator(build_tuple(s, {2, 3, 1}), ts);
    if (!(op == build_DS_operator(build_tuple(s, {1, 2, 3}), ts))) return false;
    if (!(op == build_DS_operator(build_tuple(s, {3, 1, 2}), ts))) return false;
    PolyQ fs = schur_eval_x(s.s, ts);
    for (long a : leading_term(s))
        if (!op.apply(RatQ(schur_eval_x(mutate_kdv(s, a).s, ts), fs)).is_zero())
            return false;

    Sampler rng(13);
    int done = 0;
    while (done < 10) {
        int n = int(rng.int_in(2, 3));
        KdVSet k = random_kdv_set(rng, n, 6);
        std::vector<Rational> sample = rng.rationals(10, 4);
        if (schur_eval_x(k.s, sample).is_zero()) continue;
        DiffOpQ o;
        try {
            o = build_DS_operator(build_tuple(k, random_permutation(rng, n)), sample);
        } catch (const std::domain_error&) {
            continue;  // degenerate sample
        }
        if (!(o == build_DS_operator(build_tuple(k, random_permutation(rng, n)), sample)))
            return false;
        PolyQ base = schur_eval_x(k.s, sample);
        for (long a : leading_term(k))
            if (!o.apply(RatQ(schur_eval_x(mutate_kdv(k, a).s, sample), base)).is_zero())
                return false;
        ++done;
    }
    return true;
}

}  // namespace

int main() {
    criterion(1, "Adler-Moser tuple, 20 exact samples", adler_moser);
    criterion(2, "N=3 chain tuple and degree chain to (6,9,12)", n3_chain);
    criterion(3, "printed Schur identities + 200 random pair instances", schur_identities);
    criterion(4, "mutation example, 100 reductions, Weyl relations", mutation_calculus);
    criterion(5, "Bethe residuals < 1e-9 on 50 random tuples", bethe_residuals_small);
    criterion(6, "flow vanishing for r in (2m, 2m+4], 30 families", flow_vanishing);
    criterion(7, "tangency of all flows r <= 2m, N=2,3, m <= 4", tangency);
    criterion(8, "dressing route equals T^J route, 20 random (J,c,r)", gauge_independence);
    criterion(9, "mKdV fields push forward to KdV fields", miura_pushforward);
    criterion(10, "tau generation equals polynomial generation; tau_{W_S}=F_S",
              tau_keystone);
    criterion(11, "tau pair identity, 100 randomized instances", tau_pair);
    criterion(12, "tau flows match mKdV fields at 3 samples each", wilson_consistency);
    criterion(13, "D_S operator: permutation independence and kernel", ds_operator);
    return failures == 0 ? 0 : 1;
}
