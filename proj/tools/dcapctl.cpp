// dcapctl: command-line front end over dcap::execute.

#include "dcap/cli.hpp"

#include "CLI11.hpp"

#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"Exact checks for infinite-order differential operators on non-Archimedean discs"};
    app.require_subcommand(1);
    app.fallthrough();

    dcap::RunConfig cfg;
    std::uint64_t alpha_max = 0, gamma_cap = 0, degree_cap = 0, count = 0, r_max = 0, beta_max = 0, delta_max = 0, n = 0;
    std::size_t d = 0;

    app.add_option("--backend", cfg.backend, "hahn or p=<prime>")->capture_default_str();
    app.add_option("--seed", cfg.seed, "fuzz seed")->capture_default_str();
    auto* o_alpha = app.add_option("--alpha-max", alpha_max, "largest alpha (or index cap for classify)");
    auto* o_gamma = app.add_option("--gamma-cap", gamma_cap, "largest |gamma| for identity");
    auto* o_degree = app.add_option("--degree-cap", degree_cap, "degree cap for symbols and norm brackets");
    auto* o_count = app.add_option("--count", count, "number of fuzzed operators");
    auto* o_r = app.add_option("--r-max", r_max, "largest r in rapid-decrease checks");
    auto* o_beta = app.add_option("--beta-max", beta_max, "largest beta for hole rows");
    auto* o_delta = app.add_option("--delta-max", delta_max, "largest delta for tail rows");
    auto* o_n = app.add_option("--n", n, "subdisc index for decay");
    auto* o_d = app.add_option("--d", d, "dimension")->check(CLI::Range(1, 8));
    app.add_option("--domain", cfg.domain, "domain descriptor as JSON");
    app.add_option("--operator", cfg.operator_path, "operator text file");
    app.add_option("--r-valuation", cfg.r_valuation, "valuation of R for the seminorm")->capture_default_str();
    app.add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();

    for (const char* name : {"roundtrip", "identity", "classify", "norms", "symbol", "decay", "suite"})
        app.add_subcommand(name);
    auto* ce = app.add_subcommand("counterexample", "claim1, claim2 or laurent");
    ce->require_subcommand(1);
    for (const char* name : {"claim1", "claim2", "laurent"}) ce->add_subcommand(name);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    cfg.command = app.get_subcommands().front()->get_name();
    if (cfg.command == "counterexample") cfg.subcommand = ce->get_subcommands().front()->get_name();
    if (*o_alpha) cfg.alpha_max = alpha_max;
    if (*o_gamma) cfg.gamma_cap = gamma_cap;
    if (*o_degree) cfg.degree_cap = degree_cap;
    if (*o_count) cfg.count = count;
    if (*o_r) cfg.r_max = r_max;
    if (*o_beta) cfg.beta_max = beta_max;
    if (*o_delta) cfg.delta_max = delta_max;
    if (*o_n) cfg.n = n;
    if (*o_d) cfg.d = d;
    return dcap::execute(cfg, std::cout, std::cerr);
}
