#pragma once

// Per-item bodies shared by the serial and OpenMP kernels. Each function
// handles one independent work item and touches no shared state.

#include <cstdint>
#include <vector>

#include "parlives/kernels.hpp"

namespace parlives::kernels::detail {

/// cos/sin of every grid angle.
struct TrigTable {
    std::vector<double> cos;
    std::vector<double> sin;

    explicit TrigTable(const ScanGrid& grid);
};

/// Best (B, B') for A' = grid row `row`, with A pinned to angle 0.
ScanResult scan_row(const ScanGrid& grid, const TrigTable& trig, std::size_t row);

/// Index of the largest s; ties go to the lowest index.
ScanResult best_of(const std::vector<ScanResult>& rows);

std::size_t scan_rows(const ScanGrid& grid);

/// Samples [chunk * kSampleChunk, min(n, (chunk+1) * kSampleChunk)).
SignSum sample_chunk(double theta_a, double theta_b, std::uint64_t n, std::uint64_t seed, std::uint64_t chunk);

std::uint64_t chunk_count(std::uint64_t n);

lives::ExperimentRecord run_trial(const TrialSpec& spec, std::uint64_t seed, std::uint64_t index);

void check_spec(const TrialSpec& spec);
void check_grid(const ScanGrid& grid);

}  // namespace parlives::kernels::detail
