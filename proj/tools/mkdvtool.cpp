// Command-line front end: generation of critical-point tuples, Maya/KdV-set
// mutations, Schur and tau polynomials, and the exact verification commands.
// All reports are JSON on stdout (or --out FILE); exit code 0 iff every check
// in the run passed.
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include <mkdv/cli.hpp>

using mkdv::cli::RunConfig;

namespace {

void add_family_options(CLI::App* app, RunConfig& cfg,
                        std::vector<std::string>& c_raw) {
    app->add_option("--n", cfg.n, "tuple arity N");
    app->add_option("--seq", cfg.J, "generation sequence j_1,...,j_m")->delimiter(',');
    app->add_option("--c", c_raw, "coordinates c_1,...,c_m as exact rationals")
        ->delimiter(',');
}

int emit(const mkdv::cli::CmdResult& res, const RunConfig& cfg) {
    std::string text = res.report.dump(2) + "\n";
    if (cfg.out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(cfg.out_path);
        out << text;
    }
    return res.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact critical-point families, mutations, and tau functions"};
    app.require_subcommand(1);

    RunConfig cfg;
    mkdv::cli::apply_env_defaults(cfg);
    std::vector<std::string> c_raw;
    std::string parts_raw;

    app.add_option("--out", cfg.out_path, "write the JSON report to this file");
    app.add_option("--seed", cfg.seed, "sampler seed");
    app.add_option("--floor", cfg.floor_depth, "dressing floor depth (0 = automatic)");
    app.add_option("--tol", cfg.tolerance, "numeric tolerance for root-based checks");

    CLI::App* generate = app.add_subcommand("generate", "generate the tuple Y^J(c)");
    add_family_options(generate, cfg, c_raw);

    CLI::App* mutate = app.add_subcommand("mutate", "mutate or reduce a KdV subset");
    mutate->add_option("--n", cfg.n, "period N");
    mutate->add_option("--parts", parts_raw, "partition of the KdV subset, e.g. (2,1,1)");
    mutate->add_option("--a", cfg.a, "leading element to mutate at (omit to reduce)");

    CLI::App* schur = app.add_subcommand("schur", "Schur polynomial of a partition");
    schur->add_option("--parts", parts_raw, "partition, e.g. (3,1)");
    CLI::App* pair = schur->add_subcommand("pair", "two-element Wronskian identity");
    pair->add_option("--s", parts_raw, "partition of the base set S");
    pair->add_option("--a1", cfg.a1, "first added order (not in S+1)");
    pair->add_option("--a2", cfg.a2, "second added order (not in S+1)");

    CLI::App* tau = app.add_subcommand("tau", "tau functions of the generated tuple");
    add_family_options(tau, cfg, c_raw);

    CLI::App* verify = app.add_subcommand("verify", "exact verification commands");
    verify->require_subcommand(1);
    for (const char* which : {"bethe", "mkdv", "kdv", "wilson", "xy"}) {
        CLI::App* sub = verify->add_subcommand(which);
        add_family_options(sub, cfg, c_raw);
        sub->add_option("--r", cfg.r, "flow index");
        sub->add_option("--i", cfg.i, "Miura-map index");
    }

    CLI11_PARSE(app, argc, argv);

    try {
        cfg.c = mkdv::cli::parse_rationals(c_raw);
        if (!parts_raw.empty() || mutate->parsed() || schur->parsed())
            cfg.parts = mkdv::cli::parse_partition(parts_raw);
        cfg.has_a = mutate->count("--a") > 0;

        cfg.command = app.get_subcommands().front()->get_name();
        if (schur->parsed() && pair->parsed()) cfg.command = "schur pair";
        if (verify->parsed())
            cfg.command = "verify " + verify->get_subcommands().front()->get_name();
    } catch (const std::exception& e) {
        std::cerr << "argument error: " << e.what() << "\n";
        return 2;
    }

    return emit(mkdv::cli::run_command(cfg), cfg);
}
