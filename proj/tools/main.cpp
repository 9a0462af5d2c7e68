#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"

int main(int argc, char** argv) {
    using parlives::app::Format;

    CLI::App app{"Parallel-lives toy model: mixtures, singlet, CHSH bounds and locality audit"};
    app.require_subcommand(1);

    parlives::app::RunConfig cfg;
    std::string format = "text";
    std::uint64_t seed = 0;
    std::size_t rounds = 0, trials = 0;
    double tol = 0.0;

    auto* seed_opt = app.add_option("--seed", seed, "RNG seed (required by sampled commands)");
    auto* rounds_opt = app.add_option("--rounds", rounds, "Maximum rounds per experiment");
    auto* trials_opt = app.add_option("--trials", trials, "Number of trials or measurements");
    auto* tol_opt = app.add_option("--tol", tol, "Override the identity tolerance");
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
    app.add_option("--out", cfg.out, "Write the report here instead of stdout");

    app.add_subcommand("mixtures", "Density-matrix equality of different ensembles")->fallthrough();
    app.add_subcommand("singlet", "Same-basis anticorrelation of the singlet")->fallthrough();
    app.add_subcommand("chsh", "CHSH hierarchy: local, quantum, parallel lives")->fallthrough();
    app.add_subcommand("parallel-lives", "Seeded parallel-lives experiments")->fallthrough();
    auto* audit = app.add_subcommand("audit", "Causal audit of event logs, honest and faulty")->fallthrough();
    audit->add_option("--events", cfg.events_out, "Write one honest event log as JSON");
    audit->add_option("--log", cfg.log_in, "Audit this JSON event log instead")->check(CLI::ExistingFile);
    auto* choose = app.add_subcommand("choose", "Let a beam splitter pick between two options")->fallthrough();
    choose->add_option("option_a", cfg.option_a)->required();
    choose->add_option("option_b", cfg.option_b)->required();
    app.add_subcommand("all", "Every section in one report")->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    cfg.command = app.get_subcommands().front()->get_name();
    if (*seed_opt) cfg.seed = seed;
    if (*rounds_opt) cfg.rounds = rounds;
    if (*trials_opt) cfg.trials = trials;
    if (*tol_opt) cfg.tol = tol;
    cfg.format = *parlives::app::format_from_string(format);

    return parlives::app::run(cfg, std::cout, std::cerr);
}
