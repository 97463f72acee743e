#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <mkdv/kdv.hpp>
#include <mkdv/random_objects.hpp>

using namespace mkdv;

namespace {
RatQ rq(long long num, long long den = 1) { return RatQ(Rational(num, den)); }

// A generic-enough rational function of x for commutation tests.
RatQ test_fn() {
    return RatQ(PolyQ(std::vector<Rational>{Rational(1), Rational(0), Rational(2)}),
                PolyQ(std::vector<Rational>{Rational(3), Rational(1)}));
}

PsDO random_D_operator(Sampler& rng, int n) {
    PsDO l = PsDO::d(n);
    for (int i = 0; i <= n - 2; ++i) {
        PolyQ p(rng.rationals(3, 4));
        if (!p.is_zero()) l = l + PsDO::fn(RatQ(p)) * PsDO::d(i);
    }
    return l;
}
}

TEST_CASE("pseudodifferential product: commutation rule") {
    RatQ u = test_fn();

    // d u = u d + u'
    CHECK(PsDO::d(1) * PsDO::fn(u) == PsDO::fn(u) * PsDO::d(1) + PsDO::fn(u.derivative()));

    // d^{-1} d = 1 within floor
    PsDO dinv = PsDO::d(-1).truncated(-6);
    CHECK(dinv * PsDO::d(1) == PsDO::one());
    CHECK(PsDO::d(1) * dinv == PsDO::one());

    // (d + v)(d - v) = d^2 - v' - v^2
    RatQ v = u;
    PsDO lhs = (PsDO::d(1) + PsDO::fn(v)) * (PsDO::d(1) - PsDO::fn(v));
    PsDO rhs = PsDO::d(2) - PsDO::fn(v.derivative() + v * v);
    CHECK(lhs == rhs);

    // d^{-1} u = u d^{-1} - u' d^{-2} + u'' d^{-3} - ... (alternating signs)
    PsDO exp1 = (PsDO::d(-1) * PsDO::fn(u).truncated(-4));
    RatQ du = u;
    Rational sign(1);
    for (int k = -1; k >= -4; --k) {
        CHECK(exp1.coeff(k) == RatQ(sign) * du);
        du = du.derivative();
        sign = -sign;
    }

    // untruncated d^{-1} against a non-constant function is refused
    CHECK_THROWS_AS(PsDO::d(-1) * PsDO::fn(u), std::invalid_argument);
    // ... but against a constant it is exact
    CHECK(PsDO::d(-1) * PsDO::fn(rq(7)) == PsDO::fn(rq(7)) * PsDO::d(-1));
}

TEST_CASE("pseudodifferential product: associativity within floor") {
    Sampler rng(23);
    for (int trial = 0; trial < 5; ++trial) {
        PsDO a = PsDO::d(int(rng.int_in(-2, 2))).truncated(-5) + PsDO::fn(RatQ(PolyQ(rng.rationals(2, 3))));
        PsDO b = PsDO::d(int(rng.int_in(-1, 2))).truncated(-5) + PsDO::fn(RatQ(PolyQ(rng.rationals(2, 3))));
        PsDO c = PsDO::d(int(rng.int_in(0, 2))) + PsDO::fn(RatQ(PolyQ(rng.rationals(2, 3))));
        CHECK((a * b) * c == a * (b * c));
    }
}

TEST_CASE("nth_root") {
    // L = d^N -> root = d
    for (int n = 2; n <= 3; ++n) {
        PsDO root = nth_root(PsDO::d(n), n, 5);
        CHECK(root == PsDO::d(1).truncated(-5));
    }

    // N = 2, L = d^2 - u: root = d - (u/2) d^{-1} + ...
    RatQ u = test_fn();
    PsDO l = PsDO::d(2) - PsDO::fn(u);
    PsDO root = nth_root(l, 2, 6);
    CHECK(root.coeff(0).is_zero());
    CHECK(root.coeff(-1) == rq(-1, 2) * u);
    CHECK(psdo_pow(root, 2) == l.truncated(psdo_pow(root, 2).floor));

    // uniqueness: deterministic recursion
    CHECK(nth_root(l, 2, 6) == root);

    // (root)^N = L for random L in D, N = 2, 3
    Sampler rng(29);
    for (int n = 2; n <= 3; ++n) {
        PsDO ld = random_D_operator(rng, n);
        PsDO rt = nth_root(ld, n, n + 4);
        PsDO p = psdo_pow(rt, n);
        CHECK(p == ld.truncated(p.floor));
    }
}

TEST_CASE("kdv_vector_field") {
    RatQ u0 = test_fn();
    PsDO l = PsDO::d(2) + PsDO::fn(u0);

    // r = N: (L^{N/N})^+ = L, commutator zero
    CHECK(kdv_vector_field(l, 2, 2, 6).is_zero());

    // N = 2, r = 1: [d, L] = u0', the translation flow
    CHECK(kdv_vector_field(l, 1, 2, 6) == PsDO::fn(u0.derivative()));

    // N = 2, r = 3 on L = d^2 - u: the right side is a u''' + b u u' for
    // constants (a, b) shared by every u -- the classical KdV shape.
    auto r3 = [](const RatQ& u) {
        PsDO lu = PsDO::d(2) - PsDO::fn(u);
        PsDO f = kdv_vector_field(lu, 3, 2, 8);
        REQUIRE(f.max_deg() == 0);
        return f.coeff(0);
    };
    // fit (a, b) on u = x^2, where u''' = 0 and u u' = 2 x^3
    RatQ ux2 = RatQ(PolyQ::monomial(2));
    RatQ fit = r3(ux2);
    RatQ b = fit / (ux2 * ux2.derivative());
    REQUIRE(b.is_constant());
    RatQ ux3 = RatQ(PolyQ::monomial(3));
    RatQ a = (r3(ux3) - b * ux3 * ux3.derivative()) / ux3.derivative().derivative().derivative();
    REQUIRE(a.is_constant());
    CHECK_FALSE(a.is_zero());
    CHECK_FALSE(b.is_zero());
    // the same constants reproduce the field for a generic rational u
    RatQ ug = test_fn();
    CHECK(r3(ug) == a * ug.derivative().derivative().derivative() + b * ug * ug.derivative());

    // tangency to D: order <= N-2 on random operators
    Sampler rng(31);
    for (int n = 2; n <= 3; ++n)
        for (int r = 1; r <= 3; ++r) {
            PsDO ld = random_D_operator(rng, n);
            PsDO f = kdv_vector_field(ld, r, n, r + n + 3);
            CHECK((f.is_zero() || f.max_deg() <= n - 2));
        }
}

TEST_CASE("miura_map") {
    // V = 0 -> d^N
    for (int n = 2; n <= 4; ++n)
        CHECK(miura_map(MiuraOper(DiagRF(n)), 1) == PsDO::d(n));

    // N = 2, i = 1: factors (d - v_2)(d - v_1) = (d + v)(d - v) with v = v_1
    PolyTuple am = generate_multi(2, {1, 2}, {Rational(1), Rational(5)});
    MiuraOper l = mu_from_tuple(am);
    RatQ v = l.v.e[0];
    CHECK(miura_map(l, 1) == PsDO::d(2) - PsDO::fn(v.derivative() + v * v));

    // trace-nonzero potential is refused
    CHECK_THROWS_AS(miura_map_from_potential<RatQ>({rq(1), rq(1)}, 1), std::invalid_argument);

    // m_i of generated tuples lands in D (checked inside miura_map) for all i
    Sampler rng(37);
    for (int trial = 0; trial < 5; ++trial) {
        int n = int(rng.int_in(2, 4));
        GenSeq J = random_degree_increasing_seq(rng, n, 3);
        MiuraOper lj = mu_from_tuple(generate_multi(n, J, rng.rationals(J.size(), 3)));
        for (int i = 1; i <= n; ++i) CHECK(in_D(miura_map(lj, i), n));
    }

    // gauge invariance: a defect-free gauge at j changes v_j and v_{j+1} but
    // leaves m_i fixed whenever the factors (d - v_{j+1})(d - v_j) sit
    // adjacent in L_i's product, i.e. for every i with i - 1 != j mod N.
    // (A generation witness supplies a Ricatti-defect-free g.)
    PolyTuple y1 = generate_multi(2, {1}, {Rational(1)});
    MiuraOper l1 = mu_from_tuple(y1);
    GenerationStep step = generate_step(y1, 2);
    PolyQ ytil = step.y_j0 + Rational(3) * y1.at(2);
    RatQ g = log_deriv(ytil) - log_deriv(y1.at(2));
    GaugeResult gauged = gauge_adjoint(l1, g, 2);
    REQUIRE(gauged.defect.is_zero());
    MiuraOper ltil(gauged.v);
    CHECK(miura_map(l1, 2) == miura_map(ltil, 2));       // i - 1 = 1 != j = 2: invariant
    CHECK_FALSE(miura_map(l1, 1) == miura_map(ltil, 1)); // i - 1 = 0 = j mod 2: moves
}

TEST_CASE("verify_mkdv_to_kdv") {
    // r > 2m: both sides vanish
    KdvPushforwardReport triv = verify_mkdv_to_kdv(2, {1}, {Rational(2)}, 3, 1);
    CHECK(triv.ok);
    CHECK(triv.lhs.is_zero());
    CHECK(triv.rhs.is_zero());

    // N = 2, J = (1), r = 1, i = 1
    CHECK(verify_mkdv_to_kdv(2, {1}, {Rational(2)}, 1, 1).ok);

    // N = 3, J = (1, 2), r in 1..3, i in 1..3
    std::vector<Rational> c{Rational(1), Rational(2, 3)};
    for (int r = 1; r <= 3; ++r)
        for (int i = 1; i <= 3; ++i) CHECK(verify_mkdv_to_kdv(3, {1, 2}, c, r, i).ok);

    // N = 2 at depth m = 2
    for (int r = 1; r <= 4; ++r)
        CHECK(verify_mkdv_to_kdv(2, {1, 2}, {Rational(1), Rational(5)}, r, 1).ok);
}

TEST_CASE("L_i is independent of the last coordinate unless i = j_m + 1") {
    CHECK(lemma_j_invariance_check(2, {1, 2}, {Rational(1), Rational(5)}, 2));
    CHECK(lemma_j_invariance_check(2, {1}, {Rational(4)}, 1));  // m = 1
    CHECK_THROWS_AS(lemma_j_invariance_check(2, {1, 2}, {Rational(1), Rational(5)}, 1),
                    std::invalid_argument);

    // Random depth is capped at m = 2: the check regenerates the whole tuple
    // symbolically over Q(c_m), and at m = 3 coefficient growth in that field
    // makes a single instance minutes-slow without adding coverage.
    Sampler rng(41);
    for (int trial = 0; trial < 4; ++trial) {
        int n = int(rng.int_in(2, 3));
        GenSeq J = random_degree_increasing_seq(rng, n, 2);
        std::vector<Rational> c = rng.rationals(J.size(), 3);
        for (int i = 1; i <= n; ++i) {
            if (((i - 1) % n + n) % n == (J.back() % n + n) % n) continue;
            CHECK(lemma_j_invariance_check(n, J, c, i));
        }
    }
}

TEST_CASE("d mu^J/d c_m is proportional to (y_{j-1} y_{j+1}/y_j^2) H_j") {
    CHECK(lemma_dmu_dcm_constant(2, {1}, {Rational(2)}) != Rational(0));

    Sampler rng(43);
    for (int trial = 0; trial < 5; ++trial) {
        int n = int(rng.int_in(2, 3));
        GenSeq J = random_degree_increasing_seq(rng, n, int(rng.int_in(1, 3)));
        std::vector<Rational> c = rng.rationals(J.size(), 3);
        // throws internally if the shape is wrong; the constant is nonzero
        CHECK(lemma_dmu_dcm_constant(n, J, c) != Rational(0));
    }
}
