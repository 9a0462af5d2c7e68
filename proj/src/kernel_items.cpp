#include "detail/kernel_items.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "parlives/entanglement.hpp"

namespace parlives::kernels {

ScanGrid ScanGrid::covering_half_turn(double resolution, bool tie_a_prime_to_a) {
    if (!(resolution > 0.0)) throw std::invalid_argument("grid resolution must be positive");
    const auto n = static_cast<std::size_t>(std::ceil(std::numbers::pi / resolution));
    return ScanGrid{n, std::numbers::pi / static_cast<double>(n), tie_a_prime_to_a};
}

namespace detail {

TrigTable::TrigTable(const ScanGrid& grid) : cos(grid.n), sin(grid.n) {
    for (std::size_t k = 0; k < grid.n; ++k) {
        const double t = static_cast<double>(k) * grid.step;
        cos[k] = std::cos(t);
        sin[k] = std::sin(t);
    }
}

void check_grid(const ScanGrid& grid) {
    if (grid.n == 0 || !(grid.step > 0.0)) throw std::invalid_argument("empty scan grid");
}

std::size_t scan_rows(const ScanGrid& grid) { return grid.tie_a_prime_to_a ? 1 : grid.n; }

ScanResult scan_row(const ScanGrid& grid, const TrigTable& trig, std::size_t row) {
    using entanglement::singlet_correlator_trig;
    // S = [E(A,B) + E(A',B)] + [E(A,B') - E(A',B')], A at angle 0
    const double ca = 1.0, sa = 0.0;
    const double cp = trig.cos[row], sp = trig.sin[row];
    double best_b = -INFINITY, best_bp = -INFINITY;
    std::size_t arg_b = 0, arg_bp = 0;
    for (std::size_t j = 0; j < grid.n; ++j) {
        const double e_a = singlet_correlator_trig(ca, sa, trig.cos[j], trig.sin[j]);
        const double e_p = singlet_correlator_trig(cp, sp, trig.cos[j], trig.sin[j]);
        if (e_a + e_p > best_b) {
            best_b = e_a + e_p;
            arg_b = j;
        }
        if (e_a - e_p > best_bp) {
            best_bp = e_a - e_p;
            arg_bp = j;
        }
    }
    const auto angle = [&](std::size_t k) { return static_cast<double>(k) * grid.step; };
    return ScanResult{angle(row), angle(arg_b), angle(arg_bp), best_b + best_bp};
}

ScanResult best_of(const std::vector<ScanResult>& rows) {
    if (rows.empty()) throw std::invalid_argument("no scan rows");
    ScanResult best = rows.front();
    for (const auto& r : rows)
        if (r.s > best.s) best = r;
    return best;
}

std::uint64_t chunk_count(std::uint64_t n) { return (n + kSampleChunk - 1) / kSampleChunk; }

SignSum sample_chunk(double theta_a, double theta_b, std::uint64_t n, std::uint64_t seed, std::uint64_t chunk) {
    const auto begin = chunk * kSampleChunk;
    const auto end = std::min(n, begin + kSampleChunk);
    auto rng = stream(seed, chunk);
    const auto state = entanglement::singlet();
    const auto left = entanglement::AngleBasis{theta_a}.basis();
    const auto right = entanglement::AngleBasis{theta_b}.basis();
    SignSum out;
    for (auto i = begin; i < end; ++i) {
        const auto o = entanglement::joint_measure(state, left, right, rng);
        out.sum += entanglement::outcome_sign(o.left) * entanglement::outcome_sign(o.right);
        ++out.n;
    }
    return out;
}

void check_spec(const TrialSpec& spec) {
    if (spec.min_rounds == 0 || spec.max_rounds < spec.min_rounds)
        throw std::invalid_argument("trial rounds must satisfy 1 <= min <= max");
}

lives::ExperimentRecord run_trial(const TrialSpec& spec, std::uint64_t seed, std::uint64_t index) {
    auto rng = stream(seed, index);
    const auto span = spec.max_rounds - spec.min_rounds + 1;
    const auto rounds = spec.min_rounds + static_cast<std::size_t>(rng() % span);
    return lives::run_experiment(rounds, rng, spec.options);
}

}  // namespace detail
}  // namespace parlives::kernels
