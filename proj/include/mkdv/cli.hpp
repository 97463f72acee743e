// Command implementations behind the mkdvtool binary: JSON serialization of
// the exact objects, a RunConfig parsed from flags, and one function per
// subcommand returning (exit code, report).  Keeping these in the library lets
// the test suite drive them directly and lets the binary stay a thin shim.
//
// Conventions: every number in a report is the exact string "num/den" (or
// "num"); reports are built with ordered_json so identical (config, seed)
// runs serialize byte-identically; a failed check always carries the exact
// residual object, never only a flag.
#pragma once

#include <cstdlib>
#include <sstream>
#include <string>

#include <json.hpp>

#include "combin.hpp"
#include "genpop.hpp"
#include "kdv.hpp"
#include "miura.hpp"
#include "roots.hpp"
#include "sato.hpp"
#include "schur.hpp"

namespace mkdv::cli {

using Json = nlohmann::ordered_json;

// ------------------------------ serialization ------------------------------

inline Json to_json(const Rational& r) { return r.str(); }

inline Json to_json(const PolyQ& p) {
    Json coeffs = Json::array();
    for (int i = 0; i <= p.degree(); ++i) coeffs.push_back(p.coeff(i).str());
    return Json{{"coeffs", coeffs}, {"display", p.str()}};
}

inline Json to_json(const RatQ& f) {
    return Json{{"num", to_json(f.num())}, {"den", to_json(f.den())},
                {"display", to_display(f)}};
}

inline Json to_json(const MultiPoly& p) {
    Json terms = Json::array();
    for (const auto& [e, c] : p.terms()) {
        Json ent = Json::array();
        for (int k : e) ent.push_back(k);
        terms.push_back(Json::array({ent, c.str()}));
    }
    return Json{{"nvars", p.nvars()}, {"terms", terms}, {"display", p.str()}};
}

inline Json to_json(const Partition& lambda) {
    Json parts = Json::array();
    for (long p : lambda.parts) parts.push_back(p);
    return parts;
}

inline Json to_json(const Maya& s) {
    Json head = Json::array();
    for (long h : s.head()) head.push_back(h);
    return Json{{"head", head}, {"tail", s.tail()}, {"display", s.str()}};
}

inline Json to_json(const PolyTuple& y) {
    Json entries = Json::array();
    for (const PolyQ& f : y.ys) entries.push_back(to_json(f));
    return entries;
}

inline Json to_json(const DiagRF& v) {
    Json entries = Json::array();
    for (const RatQ& e : v.e) entries.push_back(to_json(e));
    return entries;
}

inline Json to_json(const PsDO& p) {
    Json terms = Json::array();
    for (const auto& [deg, c] : p.terms)
        terms.push_back(Json::array({deg, to_json(c)}));
    return Json{{"floor", p.floor}, {"terms", terms}};
}

inline Json to_json(const GrSpace& w) {
    Json basis = Json::array();
    for (const LaurentVec& v : w.basis) {
        Json vec = Json::array();
        for (const auto& [deg, c] : v.terms())
            vec.push_back(Json::array({deg, c.str()}));
        basis.push_back(vec);
    }
    return Json{{"n", w.n}, {"basis", basis}};
}

// ------------------------------- run config --------------------------------

struct RunConfig {
    std::string command;                 // e.g. "verify mkdv"
    int n = 2;
    GenSeq J;
    std::vector<Rational> c;
    int r = 1;
    int i = 1;
    Partition parts;                     // schur / mutate input
    long a = 0, a1 = 0, a2 = 0;          // pair-identity / mutation elements
    bool has_a = false;
    int floor_depth = 0;                 // 0 = choose per command
    std::uint64_t seed = 20260823;
    double tolerance = 1e-9;
    std::string out_path;                // empty = stdout

    Json to_json() const {
        Json cv = Json::array();
        for (const Rational& x : c) cv.push_back(x.str());
        Json jv = Json::array();
        for (int j : J) jv.push_back(j);
        return Json{{"command", command}, {"n", n},    {"seq", jv},
                    {"c", cv},            {"r", r},    {"i", i},
                    {"parts", cli::to_json(parts)},    {"floor", floor_depth},
                    {"seed", seed},       {"tolerance", tolerance}};
    }
};

// Environment defaults: MKDV_FLOOR for the dressing floor, MKDV_SEED for the
// sampler seed; explicit flags win.
inline void apply_env_defaults(RunConfig& cfg) {
    if (const char* f = std::getenv("MKDV_FLOOR")) cfg.floor_depth = std::atoi(f);
    if (const char* s = std::getenv("MKDV_SEED")) cfg.seed = std::strtoull(s, nullptr, 10);
}

inline std::vector<Rational> parse_rationals(const std::vector<std::string>& in) {
    std::vector<Rational> out;
    for (const std::string& s : in) out.push_back(Rational::parse(s));
    return out;
}

// Accepts "3,1" or "(3,1)" or "()" for the empty partition.
inline Partition parse_partition(std::string s) {
    std::erase(s, '(');
    std::erase(s, ')');
    std::erase(s, ' ');
    std::vector<long> parts;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty()) parts.push_back(std::stol(tok));
    return Partition(std::move(parts));
}

struct CmdResult {
    int exit_code = 0;  // 0 iff all checks pass
    Json report;
};

inline CmdResult finish(const RunConfig& cfg, Json body, bool ok) {
    Json rep{{"config", cfg.to_json()}, {"ok", ok}};
    rep.update(body);
    return CmdResult{ok ? 0 : 1, rep};
}

// -------------------------------- commands ---------------------------------

// generate: the tuple Y^J(c) with its degree vector.
inline CmdResult cmd_generate(const RunConfig& cfg) {
    PolyTuple y = generate_multi(cfg.n, cfg.J, cfg.c);
    DegreeVec kv = degree_vector_of(cfg.J, cfg.n);
    Json degrees = Json::array();
    for (long k : kv.k) degrees.push_back(k);
    bool ok = true;
    for (size_t j = 0; j < y.ys.size(); ++j)
        ok = ok && y.ys[j].degree() == int(kv.k[j]);
    return finish(cfg, Json{{"tuple", to_json(y)}, {"degrees", degrees}}, ok);
}

// mutate: one mutation of a KdV subset at a leading element, or (without --a)
// the full width-decreasing reduction to S^emptyset.
inline CmdResult cmd_mutate(const RunConfig& cfg) {
    KdVSet k(partition_to_maya(cfg.parts), cfg.n);
    if (!k.is_kdv())
        throw std::invalid_argument("mutate: the set is not a KdV subset for this N");
    Json lead = Json::array();
    for (long v : leading_term(k)) lead.push_back(v);
    Json body{{"set", to_json(k.s)}, {"leading_term", lead}, {"width", kdv_width(k)}};
    if (cfg.has_a) {
        KdVSet m = mutate_kdv(k, cfg.a);
        Json mlead = Json::array();
        for (long v : leading_term(m)) mlead.push_back(v);
        body["mutated"] = Json{{"set", to_json(m.s)},
                               {"partition", to_json(maya_to_partition(m.s))},
                               {"leading_term", mlead},
                               {"width", kdv_width(m)}};
        return finish(cfg, body, true);
    }
    std::vector<long> trace = reduce_kdv_to_empty(k);  // throws unless width decreases
    Json jt = Json::array();
    for (long v : trace) jt.push_back(v);
    body["reduction_trace"] = jt;
    return finish(cfg, body, true);
}

// schur: the polynomial F_lambda (determinant and Wronskian routes agree by
// construction) with its t_1 degree.
inline CmdResult cmd_schur(const RunConfig& cfg) {
    const MultiPoly& f = schur(cfg.parts);
    bool ok = f.degree(0) == int(cfg.parts.weight());
    return finish(cfg, Json{{"schur", to_json(f)}, {"t1_degree", f.degree(0)}}, ok);
}

// schur pair: one two-element Wronskian identity instance on W_S.
inline CmdResult cmd_schur_pair(const RunConfig& cfg) {
    PairIdentityResult r = pair_identity(partition_to_maya(cfg.parts), cfg.a1, cfg.a2);
    Json body{{"s1", to_json(r.s1)}, {"s2", to_json(r.s2)},
              {"s3", to_json(r.s3)}, {"s4", to_json(r.s4)},
              {"verified", r.verified}};
    if (!r.verified) {
        MultiPoly lhs = wr_t1({schur_from_maya(r.s1), schur_from_maya(r.s2)});
        MultiPoly rhs = schur_from_maya(r.s3) * schur_from_maya(r.s4);
        body["residual"] = to_json(lhs - rhs);
    }
    return finish(cfg, body, r.verified);
}

// tau: the normalized tau functions of the generated Grassmannian tuple, with
// the subspaces themselves for re-derivation.
inline CmdResult cmd_tau(const RunConfig& cfg) {
    GrTuple t = generate_tuple_multi(cfg.n, cfg.J, cfg.c);
    DegreeVec kv = degree_vector_of(cfg.J, cfg.n);
    bool ok = true;
    Json taus = Json::array(), spaces = Json::array();
    for (int i = 0; i < cfg.n; ++i) {
        MultiPoly tn = tau_normalized(t.members[size_t(i)]);
        ok = ok && tn.degree(0) == int(kv.k[size_t(i)]);
        taus.push_back(to_json(tn));
        spaces.push_back(to_json(t.members[size_t(i)]));
    }
    return finish(cfg, Json{{"tau", taus}, {"spaces", spaces}}, ok);
}

// verify bethe: numeric Bethe residuals of the critical-point tuple.
inline CmdResult cmd_verify_bethe(const RunConfig& cfg) {
    PolyTuple y = generate_multi(cfg.n, cfg.J, cfg.c);
    std::vector<Complex> res = bethe_residuals_of_tuple(y);
    double worst = 0;
    Json jr = Json::array();
    for (const Complex& z : res) {
        worst = std::max(worst, std::abs(z));
        jr.push_back(Json::array({std::to_string(z.real()), std::to_string(z.imag())}));
    }
    bool ok = worst < cfg.tolerance;
    return finish(cfg, Json{{"tuple", to_json(y)}, {"residuals", jr},
                            {"max_residual", worst}}, ok);
}

// verify mkdv: tangency of the r-th flow to the critical family (the field is
// a constant combination of the c-derivatives, or vanishes outright).
inline CmdResult cmd_verify_mkdv(const RunConfig& cfg) {
    TangencyReport rep = verify_theorem_main(cfg.n, cfg.J, cfg.c, cfg.r);
    Json gamma = Json::array();
    for (const Rational& g : rep.gamma) gamma.push_back(g.str());
    return finish(cfg, Json{{"vanishes", rep.field_vanishes}, {"gamma", gamma},
                            {"residual", to_json(rep.residual)}}, rep.ok);
}

// verify kdv: the i-th Miura map pushes the mKdV field to the KdV field.
inline CmdResult cmd_verify_kdv(const RunConfig& cfg) {
    KdvPushforwardReport rep =
        verify_mkdv_to_kdv(cfg.n, cfg.J, cfg.c, cfg.r, cfg.i, cfg.floor_depth);
    return finish(cfg, Json{{"lhs", to_json(rep.lhs)}, {"rhs", to_json(rep.rhs)},
                            {"residual", to_json(rep.residual)}}, rep.ok);
}

// verify wilson: the t_r tau flow against the mKdV field at a seeded sample.
inline CmdResult cmd_verify_wilson(const RunConfig& cfg) {
    GrTuple t = generate_tuple_multi(cfg.n, cfg.J, cfg.c);
    Sampler rng(cfg.seed);
    WilsonReport rep = verify_wilson(t, cfg.r, rng);
    Json body{{"lhs", to_json(rep.lhs)}, {"rhs", to_json(rep.rhs)}};
    if (!rep.ok) body["residual"] = to_json(rep.lhs - rep.rhs);
    return finish(cfg, body, rep.ok);
}

// verify xy: generation through polynomials and through tau functions agree.
inline CmdResult cmd_verify_xy(const RunConfig& cfg) {
    bool ok = x_equals_y_check(cfg.n, cfg.J, cfg.c);
    Json body{{"tuple", to_json(generate_multi(cfg.n, cfg.J, cfg.c))}};
    if (!ok) {
        GrTuple t = generate_tuple_multi(cfg.n, cfg.J, cfg.c);
        Json taus = Json::array();
        for (const GrSpace& w : t.members) taus.push_back(to_json(tau_normalized(w)));
        body["tau_route"] = taus;
    }
    return finish(cfg, body, ok);
}

// Dispatch by config.command; errors become structured reports with exit 2.
inline CmdResult run_command(const RunConfig& cfg) {
    try {
        if (cfg.command == "generate") return cmd_generate(cfg);
        if (cfg.command == "mutate") return cmd_mutate(cfg);
        if (cfg.command == "schur") return cmd_schur(cfg);
        if (cfg.command == "schur pair") return cmd_schur_pair(cfg);
        if (cfg.command == "tau") return cmd_tau(cfg);
        if (cfg.command == "verify bethe") return cmd_verify_bethe(cfg);
        if (cfg.command == "verify mkdv") return cmd_verify_mkdv(cfg);
        if (cfg.command == "verify kdv") return cmd_verify_kdv(cfg);
        if (cfg.command == "verify wilson") return cmd_verify_wilson(cfg);
        if (cfg.command == "verify xy") return cmd_verify_xy(cfg);
        throw std::invalid_argument("unknown command: " + cfg.command);
    } catch (const std::exception& e) {
        return CmdResult{2, Json{{"config", cfg.to_json()}, {"ok", false},
                                 {"error", e.what()}}};
    }
}

} // namespace mkdv::cli
