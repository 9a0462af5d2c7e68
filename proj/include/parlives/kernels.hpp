#pragma once

// Data-parallel kernels. Every kernel exists twice: `serial` is the plain
// reference loop kept for testing, `parallel` is the OpenMP version. Work is
// split into fixed items (grid rows, sample chunks, trials) with their own
// RNG streams, so both versions return bit-identical results for any thread
// count.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "parlives/parallel_lives.hpp"

namespace parlives::kernels {

/// Angles k * step for k in [0, n). With A pinned to 0, the scan covers
/// A', B and B' on this grid.
struct ScanGrid {
    std::size_t n;
    double step;
    bool tie_a_prime_to_a = false;  // scan only A' = A

    /// Grid over [0, pi) whose step does not exceed `resolution`.
    static ScanGrid covering_half_turn(double resolution, bool tie_a_prime_to_a = false);
};

struct ScanResult {
    double a_prime;
    double b;
    double b_prime;
    double s;
};

/// Samples are drawn in chunks of this size; chunk k uses stream(seed, k).
inline constexpr std::uint64_t kSampleChunk = 4096;

struct SignSum {
    std::int64_t sum = 0;  // sum of sign(left) * sign(right)
    std::uint64_t n = 0;
};

/// Trials draw their round count uniformly from [min_rounds, max_rounds].
struct TrialSpec {
    std::size_t count;
    std::size_t min_rounds;
    std::size_t max_rounds;
    lives::ProtocolOptions options = {};
};

namespace serial {

/// Maximum of the singlet CHSH value over the grid. With A fixed, S splits
/// into a term in B and a term in B', each maximized independently for every
/// A' on the grid.
ScanResult tsirelson_scan(const ScanGrid& grid);

/// Sequential-collapse singlet measurements in bases (theta_a, theta_b).
SignSum sample_singlet_correlator(double theta_a, double theta_b, std::uint64_t n, std::uint64_t seed);

/// Trial i runs with stream(seed, i): round count first, then the inputs.
std::vector<lives::ExperimentRecord> run_experiments(const TrialSpec& spec, std::uint64_t seed);

}  // namespace serial

namespace parallel {

ScanResult tsirelson_scan(const ScanGrid& grid);
SignSum sample_singlet_correlator(double theta_a, double theta_b, std::uint64_t n, std::uint64_t seed);
std::vector<lives::ExperimentRecord> run_experiments(const TrialSpec& spec, std::uint64_t seed);

/// Threads OpenMP will use for the next parallel region.
int max_threads();

}  // namespace parallel

}  // namespace parlives::kernels
