#include "parlives/serialize.hpp"

#include <stdexcept>

namespace parlives::io {

json to_json(const qcore::CMatrix& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
        rows.push_back(std::move(row));
    }
    return rows;
}

json to_json(const qcore::PureState& s) {
    json amps = json::array();
    for (std::size_t i = 0; i < s.dimension(); ++i) amps.push_back({s[i].real(), s[i].imag()});
    return {{"dims", s.dims()}, {"amplitudes", std::move(amps)}};
}

json to_json(const qcore::DensityMatrix& rho) { return {{"dims", rho.dims()}, {"entries", to_json(rho.matrix())}}; }

json to_json(const locality::SpacetimeEvent& e) {
    return {{"id", e.id},
            {"site", locality::to_string(e.site)},
            {"position", e.position},
            {"time", e.time},
            {"kind", locality::to_string(e.kind)},
            {"deps", e.deps}};
}

json to_json(const locality::EventLog& log) {
    json out = json::array();
    for (const auto& e : log) out.push_back(to_json(e));
    return out;
}

json to_json(const locality::CausalReport& r) {
    json violations = json::array();
    for (const auto& v : r.violations)
        violations.push_back({{"event", v.event},
                              {"dep", v.dep},
                              {"rule", locality::to_string(v.rule)},
                              {"required_time", v.required_time},
                              {"actual_time", v.actual_time}});
    return {{"n_events", r.n_events}, {"passed", r.passed}, {"violations", std::move(violations)}};
}

locality::EventLog event_log_from_json(const json& j) {
    if (!j.is_array()) throw std::invalid_argument("event log must be a JSON array");
    locality::EventLog log;
    log.reserve(j.size());
    try {
        for (const auto& e : j) {
            const auto site = locality::site_from_string(e.at("site").get<std::string>());
            const auto kind = locality::kind_from_string(e.at("kind").get<std::string>());
            if (!site || !kind) throw std::invalid_argument("unknown site or event kind");
            log.push_back({e.at("id").get<std::string>(), *site, e.at("position").get<double>(),
                           e.at("time").get<double>(), *kind,
                           e.value("deps", std::vector<std::string>{})});
        }
    } catch (const json::exception& ex) {
        throw std::invalid_argument(std::string("malformed event: ") + ex.what());
    }
    return log;
}

json to_json(const lives::Bubble& b) {
    json rounds = json::array();
    for (const auto& r : b.transcript.rounds)
        rounds.push_back({{"input", r.input},
                          {"output", r.output},
                          {"light", r.output == lives::kRed ? "red" : "green"},
                          {"pressed", r.pressed}});
    return {{"agent", lives::to_string(b.agent)}, {"weight", b.weight}, {"transcript", std::move(rounds)}};
}

json to_json(const lives::ExperimentRecord& r, bool include_events) {
    json alice = json::array(), bob = json::array(), pairs = json::array();
    for (const auto& b : r.alice.bubbles) alice.push_back(to_json(b));
    for (const auto& b : r.bob.bubbles) bob.push_back(to_json(b));
    for (const auto& p : r.pairs)
        pairs.push_back({{"alice", p.alice_index}, {"bob", p.bob_index}, {"weight", p.pair_weight}});
    json out = {{"rounds", r.n_rounds},
                {"alice_inputs", r.alice_inputs},
                {"bob_inputs", r.bob_inputs},
                {"alice_bubbles", std::move(alice)},
                {"bob_bubbles", std::move(bob)},
                {"pairs", std::move(pairs)},
                {"n_events", r.events.size()}};
    if (include_events) out["events"] = to_json(r.events);
    return out;
}

json to_json(const entanglement::CorrelatorEstimate& e) {
    return {{"value", e.value},
            {"method", e.method == entanglement::EstimateMethod::analytic ? "analytic" : "sampled"},
            {"n_samples", e.n_samples},
            {"std_err", e.std_err}};
}

json to_json(const entanglement::ChainReport& r) {
    json stages = json::array();
    for (const auto& st : r.stages) {
        json checks = json::array();
        for (const auto& c : st.checks)
            checks.push_back({{"name", c.name}, {"deviation", c.deviation}, {"tolerance", c.tolerance}, {"passed", c.passed}});
        stages.push_back({{"label", st.label}, {"state", to_json(st.state)}, {"checks", std::move(checks)}});
    }
    return {{"theta", r.theta}, {"stages", std::move(stages)}, {"detector_pair", to_json(r.detector_pair)}, {"passed", r.passed}};
}

json to_json(const chsh::ChshResult& r) {
    json terms = json::array();
    for (const auto& t : r.terms) terms.push_back(to_json(t));
    return {{"strategy_class", chsh::to_string(r.strategy_class)},
            {"S", r.s},
            {"abs_S", std::abs(r.s)},
            {"success_prob", r.success_prob},
            {"terms", std::move(terms)}};
}

}  // namespace parlives::io
