#pragma once

// Subcommands of the command-line tool. Each builds a Report; run() parses
// nothing and only dispatches, so tests can drive it with a RunConfig.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "report.hpp"

namespace parlives::app {

struct RunConfig {
    std::string command;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> rounds;
    std::optional<std::size_t> trials;
    std::optional<double> tol;
    Format format = Format::text;
    std::string out;         // empty: stdout
    std::string events_out;  // audit: write one honest event log here
    std::string log_in;      // audit: audit this JSON event log instead
    std::string option_a;    // choose
    std::string option_b;
};

json config_echo(const RunConfig& c);

// Individual sections. Sampled ones take the seed explicitly.
Report mixtures_report(double tol);
Report purification_report(std::uint64_t seed, std::size_t n_mixtures, double tol);
Report basis_invariance_report(std::uint64_t seed, std::size_t n_angles, double tol);
Report singlet_report(std::uint64_t seed, std::size_t n_measurements);
Report chain_report(double tol);
Report lhv_report();
Report quantum_report(std::uint64_t seed, double tol);
Report parallel_lives_report(std::uint64_t seed, std::size_t n_trials, std::size_t max_rounds);
Report audit_report(std::uint64_t seed, std::size_t n_trials, std::size_t max_rounds,
                    const std::string& events_out = {});
Report audit_log_report(const std::string& log_path);

// Whole subcommands. Throw UsageError on bad arguments.
Report cmd_mixtures(const RunConfig& c);
Report cmd_singlet(const RunConfig& c);
Report cmd_chsh(const RunConfig& c);
Report cmd_parallel_lives(const RunConfig& c);
Report cmd_audit(const RunConfig& c);
Report cmd_choose(const RunConfig& c);
Report cmd_all(const RunConfig& c);

Report dispatch(const RunConfig& c);

/// Runs the command and writes the rendered report to `out` (or to
/// c.out when set). Returns the process exit code: 0 pass, 1 check
/// failure, 2 usage error or unreadable input.
int run(const RunConfig& c, std::ostream& out, std::ostream& err);

}  // namespace parlives::app
