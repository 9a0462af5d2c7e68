#pragma once

// CHSH value and PR-game success for three strategy classes: deterministic
// local hidden variables, the quantum singlet, and the parallel-lives engine.
//
// Term order is fixed: S = E(A,B) + E(A,B') + E(A',B) - E(A',B').
// Box inputs map x = 0 -> A, x = 1 -> A', y = 0 -> B, y = 1 -> B'.

#include <array>
#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "parlives/entanglement.hpp"
#include "parlives/parallel_lives.hpp"

namespace parlives::chsh {

using entanglement::AngleBasis;
using entanglement::CorrelatorEstimate;
using lives::Bit;

enum class StrategyClass { lhv, quantum, parallel_lives };
std::string_view to_string(StrategyClass c);

/// Response tables: alice[x] and bob[y].
struct DeterministicStrategy {
    std::array<Bit, 2> alice;
    std::array<Bit, 2> bob;

    bool operator==(const DeterministicStrategy&) const = default;
};

struct ChshSettings {
    AngleBasis a;
    AngleBasis a_prime;
    AngleBasis b;
    AngleBasis b_prime;
};

struct ChshResult {
    double s = 0.0;
    /// E(A,B), E(A,B'), E(A',B), E(A',B') (indexed 2x + y).
    std::array<CorrelatorEstimate, 4> terms{};
    double success_prob = 0.0;
    StrategyClass strategy_class = StrategyClass::lhv;
};

/// E00 + E01 + E10 - E11.
double combine(const std::array<CorrelatorEstimate, 4>& terms);

/// CHSH-game success (S + 4) / 8 under uniform inputs.
double success_from_s(double s);

std::vector<DeterministicStrategy> all_deterministic_strategies();
ChshResult evaluate(const DeterministicStrategy& strategy);

struct LhvSummary {
    std::size_t n_strategies = 0;
    double max_s = 0.0;
    double min_s = 0.0;
    double max_success = 0.0;
    std::vector<DeterministicStrategy> argmax;
    std::vector<ChshResult> results;  // parallel to all_deterministic_strategies()
};

/// Exhaustive over all 16 deterministic strategies. Shared randomness is a
/// convex combination of these and cannot exceed their maximum.
LhvSummary lhv_exhaustive();

/// Analytic singlet correlators from the Born rule.
ChshResult quantum_chsh(const ChshSettings& settings);

/// Monte-Carlo correlators, n samples per setting; setting k samples with
/// seed stream k of `seed`.
ChshResult quantum_chsh_sampled(const ChshSettings& settings, std::uint64_t n, std::uint64_t seed,
                                bool use_openmp = true);

struct OptimizeOptions {
    double resolution = 1e-3;       // grid step bound, radians
    double refine_until = 1e-12;    // pattern-search step at which refinement stops
    bool tie_a_prime_to_a = false;  // restrict A' = A
    bool use_openmp = true;
};

struct QuantumOptimum {
    ChshSettings settings;
    double grid_s;
    double s_max;
    double success;
    std::size_t grid_points;  // angles per axis
};

/// Grid scan (A pinned to 0, every other angle on a grid over [0, pi))
/// followed by pattern-search refinement around the best grid point. The
/// reported s_max is re-evaluated through quantum_chsh.
QuantumOptimum quantum_optimize(const OptimizeOptions& options = {});

/// Weight-averaged correlators over every matched pair and round of
/// `records`. success_prob is the mean over the four input pairs of the
/// weighted PR-predicate success. Throws std::domain_error if some input
/// pair never occurred.
ChshResult box_chsh(const std::vector<lives::ExperimentRecord>& records);

struct ParallelLivesChsh {
    ChshResult result;
    std::size_t n_trials;
    std::size_t audits_passed;
    std::size_t bijections;
    std::size_t total_violations;
};

/// n_trials experiments with round counts drawn from [1, max_rounds].
ParallelLivesChsh parallel_lives_chsh(std::size_t n_trials, std::uint64_t seed, std::size_t max_rounds = 6,
                                      bool use_openmp = true);

}  // namespace parlives::chsh
