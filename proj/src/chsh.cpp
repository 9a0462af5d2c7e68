#include "parlives/chsh.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "parlives/kernels.hpp"
#include "parlives/locality.hpp"

namespace parlives::chsh {

using entanglement::EstimateMethod;

std::string_view to_string(StrategyClass c) {
    switch (c) {
        case StrategyClass::lhv: return "lhv";
        case StrategyClass::quantum: return "quantum";
        case StrategyClass::parallel_lives: return "parallel_lives";
    }
    return "?";
}

double combine(const std::array<CorrelatorEstimate, 4>& t) {
    return t[0].value + t[1].value + t[2].value - t[3].value;
}

double success_from_s(double s) { return (s + 4.0) / 8.0; }

std::vector<DeterministicStrategy> all_deterministic_strategies() {
    std::vector<DeterministicStrategy> out;
    for (unsigned code = 0; code < 16; ++code)
        out.push_back({{Bit(code & 1u), Bit((code >> 1) & 1u)}, {Bit((code >> 2) & 1u), Bit((code >> 3) & 1u)}});
    return out;
}

ChshResult evaluate(const DeterministicStrategy& st) {
    ChshResult r;
    r.strategy_class = StrategyClass::lhv;
    int wins = 0;
    for (Bit x = 0; x < 2; ++x)
        for (Bit y = 0; y < 2; ++y) {
            const Bit a = st.alice[x], b = st.bob[y];
            r.terms[2 * x + y] = {double(entanglement::outcome_sign(a) * entanglement::outcome_sign(b)),
                                  EstimateMethod::analytic, 0, 0.0};
            if ((a ^ b) == (x & y)) ++wins;
        }
    r.s = combine(r.terms);
    r.success_prob = wins / 4.0;
    return r;
}

LhvSummary lhv_exhaustive() {
    LhvSummary out;
    const auto strategies = all_deterministic_strategies();
    out.n_strategies = strategies.size();
    out.max_s = -INFINITY;
    out.min_s = INFINITY;
    for (const auto& st : strategies) {
        auto r = evaluate(st);
        out.max_s = std::max(out.max_s, r.s);
        out.min_s = std::min(out.min_s, r.s);
        out.max_success = std::max(out.max_success, r.success_prob);
        out.results.push_back(r);
    }
    for (std::size_t i = 0; i < strategies.size(); ++i)
        if (out.results[i].s == out.max_s) out.argmax.push_back(strategies[i]);
    return out;
}

namespace {

std::array<std::pair<AngleBasis, AngleBasis>, 4> setting_pairs(const ChshSettings& s) {
    return {{{s.a, s.b}, {s.a, s.b_prime}, {s.a_prime, s.b}, {s.a_prime, s.b_prime}}};
}

double chsh_value_fast(double a, double ap, double b, double bp) {
    using entanglement::singlet_correlator_fast;
    return singlet_correlator_fast(a, b) + singlet_correlator_fast(a, bp) + singlet_correlator_fast(ap, b) -
           singlet_correlator_fast(ap, bp);
}

}  // namespace

ChshResult quantum_chsh(const ChshSettings& settings) {
    ChshResult r;
    r.strategy_class = StrategyClass::quantum;
    const auto pairs = setting_pairs(settings);
    for (std::size_t k = 0; k < 4; ++k) r.terms[k] = entanglement::correlator(pairs[k].first, pairs[k].second);
    r.s = combine(r.terms);
    r.success_prob = success_from_s(r.s);
    return r;
}

ChshResult quantum_chsh_sampled(const ChshSettings& settings, std::uint64_t n, std::uint64_t seed, bool use_openmp) {
    if (n == 0) throw std::invalid_argument("sampled CHSH needs at least one sample per setting");
    ChshResult r;
    r.strategy_class = StrategyClass::quantum;
    const auto pairs = setting_pairs(settings);
    for (std::size_t k = 0; k < 4; ++k) {
        const auto sub_seed = stream(seed, k)();
        const auto sum = use_openmp ? kernels::parallel::sample_singlet_correlator(pairs[k].first.theta,
                                                                                   pairs[k].second.theta, n, sub_seed)
                                    : kernels::serial::sample_singlet_correlator(pairs[k].first.theta,
                                                                                 pairs[k].second.theta, n, sub_seed);
        const double mean = static_cast<double>(sum.sum) / static_cast<double>(sum.n);
        r.terms[k] = {mean, EstimateMethod::sampled, sum.n,
                      std::sqrt(std::max(0.0, 1.0 - mean * mean) / static_cast<double>(sum.n))};
    }
    r.s = combine(r.terms);
    r.success_prob = success_from_s(r.s);
    return r;
}

QuantumOptimum quantum_optimize(const OptimizeOptions& options) {
    const auto grid = kernels::ScanGrid::covering_half_turn(options.resolution, options.tie_a_prime_to_a);
    const auto best =
        options.use_openmp ? kernels::parallel::tsirelson_scan(grid) : kernels::serial::tsirelson_scan(grid);

    // Pattern search over (A', B, B') from the best grid point, A fixed at 0.
    std::array<double, 3> x{best.a_prime, best.b, best.b_prime};
    const auto value = [&](const std::array<double, 3>& p) { return chsh_value_fast(0.0, p[0], p[1], p[2]); };
    double fx = value(x);
    const std::size_t first_free = options.tie_a_prime_to_a ? 1 : 0;
    for (double step = grid.step; step >= options.refine_until;) {
        bool improved = false;
        for (std::size_t d = first_free; d < 3; ++d)
            for (double dir : {1.0, -1.0}) {
                auto trial = x;
                trial[d] += dir * step;
                const double ft = value(trial);
                if (ft > fx) {
                    x = trial;
                    fx = ft;
                    improved = true;
                }
            }
        if (!improved) step /= 2.0;
    }

    ChshSettings settings{{0.0}, {x[0]}, {x[1]}, {x[2]}};
    const auto exact = quantum_chsh(settings);
    return QuantumOptimum{settings, best.s, exact.s, success_from_s(exact.s), grid.n};
}

ChshResult box_chsh(const std::vector<lives::ExperimentRecord>& records) {
    std::array<double, 4> signed_weight{}, weight{}, wins{};
    for (const auto& rec : records)
        for (const auto& p : rec.pairs) {
            const auto& a = p.alice_bubble.transcript.rounds;
            const auto& b = p.bob_bubble.transcript.rounds;
            for (std::size_t i = 0; i < rec.n_rounds; ++i) {
                if (!a[i].pressed || !b[i].pressed) continue;
                const auto k = 2 * a[i].input + b[i].input;
                signed_weight[k] += p.pair_weight * entanglement::outcome_sign(a[i].output) *
                                    entanglement::outcome_sign(b[i].output);
                weight[k] += p.pair_weight;
                if ((a[i].output ^ b[i].output) == (a[i].input & b[i].input)) wins[k] += p.pair_weight;
            }
        }
    ChshResult r;
    r.strategy_class = StrategyClass::parallel_lives;
    double success = 0.0;
    for (std::size_t k = 0; k < 4; ++k) {
        if (weight[k] == 0.0) throw std::domain_error("an input pair never occurred in the records");
        r.terms[k] = {signed_weight[k] / weight[k], EstimateMethod::sampled, 0, 0.0};
        success += wins[k] / weight[k];
    }
    for (const auto& rec : records)
        for (std::size_t i = 0; i < rec.n_rounds; ++i) ++r.terms[2 * rec.alice_inputs[i] + rec.bob_inputs[i]].n_samples;
    r.s = combine(r.terms);
    r.success_prob = success / 4.0;
    return r;
}

ParallelLivesChsh parallel_lives_chsh(std::size_t n_trials, std::uint64_t seed, std::size_t max_rounds,
                                      bool use_openmp) {
    if (n_trials == 0) throw std::invalid_argument("parallel-lives CHSH needs at least one trial");
    const kernels::TrialSpec spec{n_trials, 1, max_rounds};
    const auto records =
        use_openmp ? kernels::parallel::run_experiments(spec, seed) : kernels::serial::run_experiments(spec, seed);

    ParallelLivesChsh out{box_chsh(records), n_trials, 0, 0, 0};
    for (const auto& rec : records) {
        const auto report = locality::audit(rec.events);
        if (report.passed) ++out.audits_passed;
        out.total_violations += report.violations.size();
        if (lives::is_bijection(rec.pairs, rec.alice, rec.bob)) ++out.bijections;
    }
    return out;
}

}  // namespace parlives::chsh
