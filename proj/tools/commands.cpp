#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>

#include "parlives/chsh.hpp"
#include "parlives/ensembles.hpp"
#include "parlives/entanglement.hpp"
#include "parlives/kernels.hpp"
#include "parlives/locality.hpp"
#include "parlives/parallel_lives.hpp"
#include "parlives/qcore.hpp"
#include "parlives/rng.hpp"
#include "parlives/serialize.hpp"

namespace parlives::app {

namespace {

constexpr double kIdentityTol = 1e-10;
constexpr double kOptimumTol = 1e-6;
constexpr double kContrastTol = 0.02;
constexpr std::size_t kSingletBases = 50;
constexpr std::size_t kPurificationMixtures = 200;
constexpr std::size_t kInvarianceAngles = 50;
constexpr std::size_t kExhaustiveRounds = 6;
constexpr std::size_t kFaultVariants = 4;
constexpr std::size_t kFaultRounds = 6;
constexpr std::uint64_t kFaultStream = 1'000'000;
constexpr std::uint64_t kSampledPerSetting = 100'000;

double count(std::size_t n) { return static_cast<double>(n); }

std::uint64_t need_seed(const RunConfig& c) {
    if (!c.seed) throw UsageError(c.command + " draws random numbers and needs --seed");
    return *c.seed;
}

std::size_t positive(std::optional<std::size_t> v, std::size_t fallback, const char* flag) {
    if (v && *v == 0) throw UsageError(std::string(flag) + " must be at least 1");
    return v.value_or(fallback);
}

double tolerance(const RunConfig& c, double fallback) {
    if (c.tol && !(*c.tol >= 0.0)) throw UsageError("--tol must be a non-negative number");
    return c.tol.value_or(fallback);
}

Check from_chain(const std::string& stage, const entanglement::ChainCheck& cc, double tol) {
    return make_check(stage + "." + cc.name, cc.deviation, 0.0, tol);
}

double amplitude_deviation(const qcore::PureState& a, const qcore::PureState& b) {
    return (a.amplitudes() - b.amplitudes()).cwiseAbs().maxCoeff();
}

std::vector<std::string> rule_names(const locality::CausalReport& r) {
    std::vector<std::string> out;
    for (const auto& v : r.violations) out.emplace_back(locality::to_string(v.rule));
    return out;
}

}  // namespace

json config_echo(const RunConfig& c) {
    json j = {{"command", c.command}};
    j["seed"] = c.seed ? json(*c.seed) : json(nullptr);
    j["rounds"] = c.rounds ? json(*c.rounds) : json(nullptr);
    j["trials"] = c.trials ? json(*c.trials) : json(nullptr);
    j["tol"] = c.tol ? json(*c.tol) : json(nullptr);
    j["sign_convention"] = "outcome 0 -> +1, outcome 1 -> -1";
    j["colours"] = "green = 0, red = 1";
    return j;
}

// ------------------------------------------------------------------ sections

Report mixtures_report(double tol) {
    Report r;
    r.command = "mixtures";
    const auto comp = qcore::density_of(ensembles::computational_equal());
    const auto had = qcore::density_of(ensembles::hadamard_equal());
    const auto tri = qcore::density_of(ensembles::trine());
    const auto bell = qcore::density_of(ensembles::bell_uniform());
    const auto pairs = qcore::density_of(ensembles::classical_bit_pairs());

    r.add(make_check("computational_vs_hadamard", qcore::max_entry_deviation(comp, had), 0.0, tol));
    r.add(make_check("computational_vs_trine", qcore::max_entry_deviation(comp, tri), 0.0, tol));
    r.add(make_check("hadamard_vs_trine", qcore::max_entry_deviation(had, tri), 0.0, tol));
    r.add(make_check("bell_vs_classical", qcore::max_entry_deviation(bell, pairs), 0.0, tol));
    const qcore::DensityMatrix quarter({2, 2}, qcore::maximally_mixed(4).matrix());
    r.add(make_check("bell_vs_identity_quarter", qcore::max_entry_deviation(bell, quarter), 0.0, tol));

    r.data = {{"computational", io::to_json(comp)},
              {"hadamard", io::to_json(had)},
              {"trine", io::to_json(tri)},
              {"bell_uniform", io::to_json(bell)},
              {"classical_pairs", io::to_json(pairs)}};
    return r;
}

Report purification_report(std::uint64_t seed, std::size_t n_mixtures, double tol) {
    Report r;
    r.command = "purification";
    auto rng = stream(seed, 0);
    double worst = 0.0;
    std::size_t max_members = 0, max_dim = 0;
    for (std::size_t i = 0; i < n_mixtures; ++i) {
        const auto m = qcore::random_mixture(rng, 5, 4);
        const auto pure = qcore::purify(m);
        const auto reduced = qcore::partial_trace(qcore::DensityMatrix::of_pure(pure), {0});
        worst = std::max(worst, qcore::max_entry_deviation(reduced, qcore::density_of(m)));
        max_members = std::max(max_members, m.size());
        max_dim = std::max(max_dim, m.dims().front());
    }
    r.add(make_check("max_deviation", worst, 0.0, tol));
    r.data = {{"mixtures", n_mixtures}, {"largest_ensemble", max_members}, {"largest_dimension", max_dim}};
    return r;
}

Report basis_invariance_report(std::uint64_t seed, std::size_t n_angles, double tol) {
    Report r;
    r.command = "basis_invariance";
    auto rng = stream(seed, 0);
    const auto reference = entanglement::singlet();
    double worst = 0.0;
    for (std::size_t i = 0; i < n_angles; ++i) {
        const double theta = uniform01(rng) * 2.0 * std::numbers::pi;
        worst = std::max(worst, amplitude_deviation(entanglement::rewrite_in_basis({theta}), reference));
    }
    r.add(make_check("max_deviation", worst, 0.0, tol));
    r.data = {{"angles", n_angles}};
    return r;
}

Report singlet_report(std::uint64_t seed, std::size_t n) {
    Report r;
    r.command = "singlet";

    std::vector<double> thetas(kSingletBases);
    auto angle_rng = stream(seed, 0);
    for (auto& t : thetas) t = uniform01(angle_rng) * std::numbers::pi;

    auto rng = stream(seed, 1);
    std::size_t equal = 0, left_ones = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto o = entanglement::joint_measure_same_basis({thetas[i % thetas.size()]}, rng);
        if (o.left == o.right) ++equal;
        left_ones += o.left;
    }

    // Classical look-alike measured in a basis it was not prepared in.
    auto contrast_rng = stream(seed, 2);
    const auto pennies = entanglement::classical_anticorrelated_mixture();
    const auto h = qcore::MeasurementBasis::hadamard();
    std::size_t contrast_equal = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto o = entanglement::joint_measure_mixture(pennies, h, h, contrast_rng);
        if (o.left == o.right) ++contrast_equal;
    }
    const double nd = count(n);

    r.add(make_check("equal_outcomes", count(equal), 0.0, 0.0));
    r.add(make_check("left_one_fraction", count(left_ones) / nd, 0.5, 4.0 * 0.5 / std::sqrt(nd)));
    r.add(make_check("classical_hadamard_equal_fraction", count(contrast_equal) / nd, 0.5, kContrastTol));
    r.data = {{"measurements", n}, {"bases", thetas}, {"equal_outcomes", equal},
              {"classical_equal_outcomes", contrast_equal}};
    return r;
}

Report chain_report(double tol) {
    Report r;
    r.command = "apparatus_chain";
    const auto chain = entanglement::apparatus_chain();
    for (const auto& st : chain.stages)
        for (const auto& cc : st.checks) r.add(from_chain(st.label, cc, tol));

    // Detector pair against the equal mixture of |Psi,Phi> and |Phi,Psi>.
    const auto psi = entanglement::apparatus(entanglement::ApparatusFlag::saw_psi);
    const auto phi = entanglement::apparatus(entanglement::ApparatusFlag::saw_phi);
    const auto expected =
        qcore::density_of(qcore::Mixture({{qcore::tensor(psi, phi), 0.5}, {qcore::tensor(phi, psi), 0.5}}));
    r.add(make_check("detector_pair_vs_mixture", qcore::max_entry_deviation(chain.detector_pair, expected), 0.0, tol));
    r.data = io::to_json(chain);
    return r;
}

Report lhv_report() {
    Report r;
    r.command = "lhv";
    const auto lhv = chsh::lhv_exhaustive();
    r.add(make_check("strategies", count(lhv.n_strategies), 16.0, 0.0));
    r.add(make_check("max_S", lhv.max_s, 2.0, 0.0));
    r.add(make_check("min_S", lhv.min_s, -2.0, 0.0));
    r.add(make_check("max_success", lhv.max_success, 0.75, 0.0));
    double worst = 0.0;
    for (const auto& res : lhv.results) worst = std::max(worst, std::abs(res.success_prob - chsh::success_from_s(res.s)));
    r.add(make_check("success_matches_S", worst, 0.0, 0.0));

    json argmax = json::array();
    for (const auto& s : lhv.argmax)
        argmax.push_back({{"alice", {s.alice[0], s.alice[1]}}, {"bob", {s.bob[0], s.bob[1]}}});
    r.data = {{"max_S", lhv.max_s}, {"max_success", lhv.max_success}, {"argmax", std::move(argmax)}};
    return r;
}

Report quantum_report(std::uint64_t seed, double tol) {
    Report r;
    r.command = "quantum";
    const auto opt = chsh::quantum_optimize();
    chsh::OptimizeOptions tied;
    tied.tie_a_prime_to_a = true;
    const auto restricted = chsh::quantum_optimize(tied);

    const double tsirelson = 2.0 * std::numbers::sqrt2;
    const double c = std::cos(std::numbers::pi / 8.0);
    r.add(make_check("S_max", opt.s_max, tsirelson, tol));
    r.add(make_check("success", opt.success, c * c, tol));
    r.add(make_check("restricted_S_max", restricted.s_max, 2.0, tol));

    const auto sampled = chsh::quantum_chsh_sampled(opt.settings, kSampledPerSetting, seed);
    double var = 0.0;
    for (const auto& t : sampled.terms) var += t.std_err * t.std_err;
    r.add(make_check("sampled_S", sampled.s, opt.s_max, 4.0 * std::sqrt(var)));

    const auto& s = opt.settings;
    r.data = {{"settings", {{"a", s.a.theta}, {"a_prime", s.a_prime.theta}, {"b", s.b.theta}, {"b_prime", s.b_prime.theta}}},
              {"grid_points", opt.grid_points},
              {"grid_S", opt.grid_s},
              {"S_max", opt.s_max},
              {"success", opt.success},
              {"restricted_S_max", restricted.s_max},
              {"exact", io::to_json(chsh::quantum_chsh(s))},
              {"sampled", io::to_json(sampled)}};
    return r;
}

namespace {

struct Exhaustive {
    std::size_t assignments = 0;
    std::size_t bijections = 0;
    std::size_t predicate_failures = 0;
};

lives::AgentWorld world_for(lives::Agent agent, std::size_t n, std::uint64_t bits) {
    auto w = lives::make_world(agent, agent == lives::Agent::Alice ? 0.0 : 10.0);
    for (std::size_t i = 0; i < n; ++i) w = lives::press_button(w, static_cast<lives::Bit>((bits >> i) & 1u));
    return w;
}

// Alice's world depends only on x and Bob's only on y, so every (x, y) pair
// is one product of the two per-agent world lists.
Exhaustive exhaustive_matching(std::size_t max_rounds) {
    Exhaustive e;
    for (std::size_t n = 1; n <= max_rounds; ++n) {
        const std::uint64_t m = std::uint64_t{1} << n;
        std::vector<lives::AgentWorld> alice, bob;
        for (std::uint64_t x = 0; x < m; ++x) alice.push_back(world_for(lives::Agent::Alice, n, x));
        for (std::uint64_t y = 0; y < m; ++y) bob.push_back(world_for(lives::Agent::Bob, n, y));
        for (const auto& a : alice)
            for (const auto& b : bob) {
                const auto pairs = lives::match_bubbles(a, b);
                ++e.assignments;
                if (lives::is_bijection(pairs, a, b)) ++e.bijections;
                for (const auto& p : pairs)
                    if (!lives::satisfies_pr_predicate(p)) ++e.predicate_failures;
            }
    }
    return e;
}

}  // namespace

Report parallel_lives_report(std::uint64_t seed, std::size_t n_trials, std::size_t max_rounds) {
    Report r;
    r.command = "parallel_lives";
    const kernels::TrialSpec spec{n_trials, 1, max_rounds};
    const auto records = kernels::parallel::run_experiments(spec, seed);
    const auto box = chsh::box_chsh(records);

    std::size_t failures = 0, bijections = 0, order_mismatch = 0, checked_orders = 0;
    double marginal_dev = 0.0;
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& rec = records[i];
        for (const auto& p : rec.pairs)
            if (!lives::satisfies_pr_predicate(p)) ++failures;
        if (lives::is_bijection(rec.pairs, rec.alice, rec.bob)) ++bijections;
        for (auto agent : {lives::Agent::Alice, lives::Agent::Bob})
            for (double m : lives::red_marginals(rec, agent)) marginal_dev = std::max(marginal_dev, std::abs(m - 0.5));
        if (i < 50) {
            const auto reference = io::to_json(rec, true);
            for (auto order : {lives::PressOrder::alice_first, lives::PressOrder::bob_first}) {
                lives::ProtocolOptions o;
                o.order = order;
                ++checked_orders;
                if (io::to_json(lives::run_protocol(rec.alice_inputs, rec.bob_inputs, o), true) != reference)
                    ++order_mismatch;
            }
        }
    }

    const auto serial = kernels::serial::run_experiments(spec, seed);
    std::size_t kernel_mismatch = 0;
    for (std::size_t i = 0; i < records.size(); ++i)
        if (io::to_json(serial[i], true) != io::to_json(records[i], true)) ++kernel_mismatch;

    const auto ex = exhaustive_matching(kExhaustiveRounds);

    r.add(make_check("success", box.success_prob, 1.0, 0.0));
    r.add(make_check("S", box.s, 4.0, 0.0));
    r.add(make_check("predicate_failures", count(failures), 0.0, 0.0));
    r.add(make_check("bijections", count(bijections), count(n_trials), 0.0));
    r.add(make_check("max_red_marginal_deviation", marginal_dev, 0.0, 1e-12));
    r.add(make_check("press_order_mismatches", count(order_mismatch), 0.0, 0.0));
    r.add(make_check("serial_parallel_mismatches", count(kernel_mismatch), 0.0, 0.0));
    r.add(make_check("exhaustive_bijections", count(ex.bijections), count(ex.assignments), 0.0));
    r.add(make_check("exhaustive_predicate_failures", count(ex.predicate_failures), 0.0, 0.0));

    r.data = {{"trials", n_trials},
              {"max_rounds", max_rounds},
              {"box", io::to_json(box)},
              {"press_orders_checked", checked_orders},
              {"exhaustive_rounds", kExhaustiveRounds},
              {"exhaustive_assignments", ex.assignments},
              {"example", io::to_json(records.front())}};
    return r;
}

Report audit_report(std::uint64_t seed, std::size_t n_trials, std::size_t max_rounds, const std::string& events_out) {
    Report r;
    r.command = "audit";
    const auto records = kernels::parallel::run_experiments({n_trials, 1, max_rounds}, seed);

    std::size_t passed = 0, violations = 0, isolated = 0;
    for (const auto& rec : records) {
        const auto report = locality::audit(rec.events);
        if (report.passed) ++passed;
        violations += report.violations.size();
        if (locality::sites_isolated_before_meeting(rec.events)) ++isolated;
    }
    if (!events_out.empty()) {
        std::ofstream f(events_out);
        if (!f) throw UsageError("cannot write " + events_out);
        f << io::to_json(records.front().events).dump(2) << '\n';
    }

    std::size_t planted = 0, detected = 0;
    json faults = json::array();
    for (std::size_t v = 0; v < kFaultVariants; ++v) {
        auto rng = stream(seed, kFaultStream + v);
        const auto rec = lives::run_experiment(kFaultRounds, rng);
        for (std::size_t k = 0; k < locality::kFaultKinds; ++k) {
            const auto fault = static_cast<locality::Fault>(k);
            const auto report = locality::audit(locality::inject_fault(rec.events, fault, v));
            ++planted;
            if (!report.passed && !report.violations.empty()) ++detected;
            faults.push_back({{"fault", locality::to_string(fault)}, {"variant", v}, {"rules", rule_names(report)}});
        }
    }

    r.add(make_check("honest_logs_passed", count(passed), count(n_trials), 0.0));
    r.add(make_check("honest_violations", count(violations), 0.0, 0.0));
    r.add(make_check("sites_isolated", count(isolated), count(n_trials), 0.0));
    r.add(make_check("faults_detected", count(detected), count(planted), 0.0));
    r.data = {{"honest_logs", n_trials}, {"fault_logs", planted}, {"faults", std::move(faults)}};
    return r;
}

Report audit_log_report(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw UsageError("cannot read " + path);
    locality::EventLog log;
    locality::CausalReport report;
    try {
        log = io::event_log_from_json(json::parse(f));
        report = locality::audit(log);
    } catch (const json::exception& e) {
        throw UsageError(path + ": " + e.what());
    } catch (const std::invalid_argument& e) {
        throw UsageError(path + ": " + e.what());
    }
    Report r;
    r.command = "audit";
    r.add(make_check("violations", count(report.violations.size()), 0.0, 0.0));
    r.add(make_check("sites_isolated", locality::sites_isolated_before_meeting(log) ? 1.0 : 0.0, 1.0, 0.0));
    r.data = {{"log", path}, {"report", io::to_json(report)}};
    return r;
}

// ---------------------------------------------------------------- commands

Report cmd_mixtures(const RunConfig& c) {
    auto r = mixtures_report(tolerance(c, kIdentityTol));
    r.config = config_echo(c);
    return r;
}

Report cmd_singlet(const RunConfig& c) {
    auto r = singlet_report(need_seed(c), positive(c.trials, 10'000, "--trials"));
    r.config = config_echo(c);
    return r;
}

Report cmd_chsh(const RunConfig& c) {
    const auto seed = need_seed(c);
    const auto trials = positive(c.trials, 100, "--trials");
    const auto rounds = positive(c.rounds, 6, "--rounds");

    Report r;
    r.command = "chsh";
    r.config = config_echo(c);

    const auto lhv = lhv_report();
    const auto quantum = quantum_report(seed, tolerance(c, kOptimumTol));
    const auto pl = chsh::parallel_lives_chsh(trials, seed, rounds);
    r.merge(lhv, "lhv");
    r.merge(quantum, "quantum");

    Report box;
    box.add(make_check("S", pl.result.s, 4.0, 0.0));
    box.add(make_check("success", pl.result.success_prob, 1.0, 0.0));
    box.add(make_check("audits_passed", count(pl.audits_passed), count(trials), 0.0));
    box.add(make_check("audit_violations", count(pl.total_violations), 0.0, 0.0));
    box.add(make_check("bijections", count(pl.bijections), count(trials), 0.0));
    box.data = io::to_json(pl.result);
    r.merge(box, "parallel_lives");

    const double s_lhv = lhv.data.at("max_S").get<double>();
    const double s_q = quantum.data.at("S_max").get<double>();
    const double p_q = quantum.data.at("success").get<double>();
    const double tsirelson = 2.0 * std::numbers::sqrt2;
    r.add(make_check("hierarchy.quantum_minus_lhv", s_q - s_lhv, tsirelson - 2.0, kOptimumTol));
    r.add(make_check("hierarchy.box_minus_quantum", pl.result.s - s_q, 4.0 - tsirelson, kOptimumTol));

    r.table = Table{{"class", "S", "success"},
                    {{"lhv", fmt_number(s_lhv), fmt_number(lhv.data.at("max_success").get<double>())},
                     {"quantum", fmt_number(s_q), fmt_number(p_q)},
                     {"parallel_lives", fmt_number(pl.result.s), fmt_number(pl.result.success_prob)}}};
    return r;
}

Report cmd_parallel_lives(const RunConfig& c) {
    auto r = parallel_lives_report(need_seed(c), positive(c.trials, 1000, "--trials"), positive(c.rounds, 6, "--rounds"));
    r.config = config_echo(c);
    return r;
}

Report cmd_audit(const RunConfig& c) {
    Report r = c.log_in.empty() ? audit_report(need_seed(c), positive(c.trials, 1000, "--trials"),
                                               positive(c.rounds, 6, "--rounds"), c.events_out)
                                : audit_log_report(c.log_in);
    r.config = config_echo(c);
    return r;
}

Report cmd_choose(const RunConfig& c) {
    const auto seed = need_seed(c);
    if (c.option_a.empty() || c.option_b.empty()) throw UsageError("choose needs two non-empty options");

    const auto s = qcore::plus_state();
    const auto basis = qcore::MeasurementBasis::computational(2);
    auto rng = stream(seed, 0);
    const auto rec = qcore::measure(s, 0, basis, rng);
    const auto probs = qcore::outcome_probabilities(s, 0, basis);
    const auto& chosen = rec.outcome_index == 0 ? c.option_a : c.option_b;

    Report r;
    r.command = "choose";
    r.config = config_echo(c);
    r.add(make_check("p_option_a", probs[0], 0.5, kIdentityTol));
    r.add(make_check("p_option_b", probs[1], 0.5, kIdentityTol));
    r.notes = {"choice: " + chosen,
               "The photon state H|0> has amplitude 1/sqrt2 on each path. Both branches, \"" + c.option_a +
                   "\" and \"" + c.option_b + "\", persist in the model; this run reports the one you find yourself in."};
    r.data = {{"option_a", c.option_a},
              {"option_b", c.option_b},
              {"outcome", rec.outcome_index},
              {"choice", chosen},
              {"state", io::to_json(s)}};
    return r;
}

Report cmd_all(const RunConfig& c) {
    const auto seed = need_seed(c);
    const double tol = tolerance(c, kIdentityTol);
    const auto trials = positive(c.trials, 1000, "--trials");
    const auto rounds = positive(c.rounds, 6, "--rounds");

    Report r;
    r.command = "all";
    r.config = config_echo(c);
    r.merge(mixtures_report(tol), "mixtures");
    r.merge(purification_report(seed, kPurificationMixtures, tol), "purification");
    r.merge(basis_invariance_report(seed, kInvarianceAngles, tol), "basis_invariance");
    r.merge(singlet_report(seed, 10'000), "singlet");
    r.merge(chain_report(tol), "apparatus_chain");
    r.merge(lhv_report(), "lhv");
    r.merge(quantum_report(seed, kOptimumTol), "quantum");
    r.merge(parallel_lives_report(seed, trials, rounds), "parallel_lives");
    r.merge(audit_report(seed, trials, rounds), "audit");
    return r;
}

Report dispatch(const RunConfig& c) {
    if (c.command == "mixtures") return cmd_mixtures(c);
    if (c.command == "singlet") return cmd_singlet(c);
    if (c.command == "chsh") return cmd_chsh(c);
    if (c.command == "parallel-lives") return cmd_parallel_lives(c);
    if (c.command == "audit") return cmd_audit(c);
    if (c.command == "choose") return cmd_choose(c);
    if (c.command == "all") return cmd_all(c);
    throw UsageError("unknown command: " + c.command);
}

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
    Report report;
    try {
        report = dispatch(c);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return 1;
    }

    const auto text = render(report, c.format);
    if (c.out.empty()) {
        out << text;
    } else {
        std::ofstream f(c.out, std::ios::binary);
        if (!f) {
            err << "error: cannot write " << c.out << '\n';
            return 2;
        }
        f << text;
    }
    if (!report.pass()) {
        for (const auto& name : report.failing()) err << "FAIL " << name << '\n';
        return 1;
    }
    return 0;
}

}  // namespace parlives::app
