#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>

#include <mkdv/cli.hpp>

using namespace mkdv;
using cli::CmdResult;
using cli::RunConfig;

namespace {
RunConfig family_config(std::string command, int n, GenSeq j,
                        std::vector<std::string> c) {
    RunConfig cfg;
    cfg.command = std::move(command);
    cfg.n = n;
    cfg.J = std::move(j);
    cfg.c = cli::parse_rationals(c);
    return cfg;
}
}

TEST_CASE("config parsing helpers") {
    CHECK(cli::parse_partition("(3,1)") == Partition({3, 1}));
    CHECK(cli::parse_partition("3,1") == Partition({3, 1}));
    CHECK(cli::parse_partition("()") == Partition());
    CHECK(cli::parse_partition("") == Partition());
    CHECK_THROWS(cli::parse_partition("(1,3)"));  // not weakly decreasing

    std::vector<Rational> c = cli::parse_rationals({"2/3", "-7", "0"});
    CHECK(c[0] == Rational(2, 3));
    CHECK(c[1] == Rational(-7));
    CHECK(c[2].is_zero());

    setenv("MKDV_SEED", "99", 1);
    setenv("MKDV_FLOOR", "7", 1);
    RunConfig cfg;
    cli::apply_env_defaults(cfg);
    CHECK(cfg.seed == 99);
    CHECK(cfg.floor_depth == 7);
    unsetenv("MKDV_SEED");
    unsetenv("MKDV_FLOOR");
}

TEST_CASE("generate command emits the exact tuple") {
    CmdResult res = cli::run_command(family_config("generate", 2, {1, 2}, {"1", "5"}));
    CHECK(res.exit_code == 0);
    CHECK(res.report["ok"] == true);
    CHECK(res.report["degrees"] == cli::Json::array({1, 3}));
    // x^3 + 3 c1 x^2 + 3 c1^2 x + c2 at (c1, c2) = (1, 5), low to high degree
    CHECK(res.report["tuple"][1]["coeffs"] ==
          cli::Json::array({"5", "3", "3", "1"}));
}

TEST_CASE("reports are byte-identical for identical configs") {
    RunConfig cfg = family_config("tau", 3, {1, 2, 3}, {"2", "1/3", "-1"});
    std::string first = cli::run_command(cfg).report.dump(2);
    std::string second = cli::run_command(cfg).report.dump(2);
    CHECK(first == second);

    RunConfig wcfg = family_config("verify wilson", 2, {1, 2}, {"1", "5"});
    wcfg.r = 2;
    CHECK(cli::run_command(wcfg).report.dump(2) ==
          cli::run_command(wcfg).report.dump(2));
    // a different seed changes the sample but not the verdict
    RunConfig other = wcfg;
    other.seed = 7;
    CHECK(cli::run_command(other).exit_code == 0);
}

TEST_CASE("mutate command: single step and full reduction") {
    RunConfig cfg;
    cfg.command = "mutate";
    cfg.n = 2;
    cfg.parts = Partition({2, 1});
    CmdResult red = cli::run_command(cfg);
    CHECK(red.exit_code == 0);
    CHECK(red.report["reduction_trace"].is_array());
    CHECK_FALSE(red.report["reduction_trace"].empty());

    cfg.has_a = true;
    cfg.a = red.report["leading_term"].back().get<long>();
    CmdResult one = cli::run_command(cfg);
    CHECK(one.exit_code == 0);
    CHECK(one.report["mutated"]["width"].get<long>() <
          one.report["width"].get<long>());

    // not a KdV subset for this N: structured error, exit 2
    cfg.parts = Partition({2});
    cfg.n = 2;
    cfg.has_a = false;
    CmdResult bad = cli::run_command(cfg);
    CHECK(bad.exit_code == 2);
    CHECK(bad.report.contains("error"));
}

TEST_CASE("schur commands") {
    RunConfig cfg;
    cfg.command = "schur";
    cfg.parts = Partition({2, 1});
    CmdResult res = cli::run_command(cfg);
    CHECK(res.exit_code == 0);
    CHECK(res.report["t1_degree"] == 3);

    cfg.command = "schur pair";
    cfg.parts = Partition();
    cfg.a1 = -2;
    cfg.a2 = 0;
    CmdResult pair = cli::run_command(cfg);
    CHECK(pair.exit_code == 0);
    CHECK(pair.report["verified"] == true);

    cfg.a2 = 1;  // lies in S+1: precondition surfaced as an error payload
    CmdResult bad = cli::run_command(cfg);
    CHECK(bad.exit_code == 2);
    CHECK(bad.report.contains("error"));
}

TEST_CASE("tau command matches the generation degrees") {
    CmdResult res = cli::run_command(family_config("tau", 2, {1, 2, 1}, {"1", "5", "-2"}));
    CHECK(res.exit_code == 0);
    CHECK(res.report["tau"].size() == 2);
    CHECK(res.report["spaces"][0].contains("basis"));
}

TEST_CASE("verify commands: pass paths and residual-carrying failures") {
    RunConfig bethe = family_config("verify bethe", 2, {1, 2}, {"1", "5"});
    CmdResult bres = cli::run_command(bethe);
    CHECK(bres.exit_code == 0);
    CHECK(bres.report["max_residual"].get<double>() < 1e-9);

    // an unmeetable tolerance: the failure report still carries every residual
    bethe.tolerance = 0.0;
    CmdResult bfail = cli::run_command(bethe);
    CHECK(bfail.exit_code == 1);
    CHECK(bfail.report["ok"] == false);
    CHECK(bfail.report["residuals"].size() == 4);

    RunConfig mkdv1 = family_config("verify mkdv", 2, {1}, {"3"});
    mkdv1.r = 2;
    CmdResult mres = cli::run_command(mkdv1);
    CHECK(mres.exit_code == 0);
    CHECK(mres.report["vanishes"] == true);
    mkdv1.r = 1;  // Gamma_1 = d/dc_1
    CmdResult tres = cli::run_command(mkdv1);
    CHECK(tres.exit_code == 0);
    CHECK(tres.report["gamma"] == cli::Json::array({"1"}));

    RunConfig kdv = family_config("verify kdv", 2, {1, 2}, {"1", "5"});
    kdv.r = 3;
    kdv.i = 2;
    CHECK(cli::run_command(kdv).exit_code == 0);

    RunConfig xy = family_config("verify xy", 3, {1, 2}, {"2", "-1/2"});
    CHECK(cli::run_command(xy).exit_code == 0);

    RunConfig wil = family_config("verify wilson", 2, {1}, {"4"});
    wil.r = 1;
    CmdResult wres = cli::run_command(wil);
    CHECK(wres.exit_code == 0);
    CHECK(wres.report["lhs"] == wres.report["rhs"]);

    CmdResult unknown = cli::run_command(family_config("verify nothing", 2, {}, {}));
    CHECK(unknown.exit_code == 2);
}
