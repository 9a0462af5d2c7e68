#include "parlives/locality.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace parlives::locality {

namespace {

// Slack for accumulated rounding in event timestamps.
constexpr double kTimeEpsilon = 1e-9;

bool crosses_sites(Site a, Site b) { return (a == Site::A && b == Site::B) || (a == Site::B && b == Site::A); }

std::unordered_map<std::string, std::size_t> index_ids(const EventLog& log) {
    std::unordered_map<std::string, std::size_t> index;
    index.reserve(log.size());
    for (std::size_t i = 0; i < log.size(); ++i)
        if (!index.emplace(log[i].id, i).second) throw std::invalid_argument("duplicate event id: " + log[i].id);
    for (const auto& e : log)
        for (const auto& d : e.deps)
            if (!index.contains(d)) throw std::invalid_argument("event " + e.id + " depends on unknown id " + d);
    return index;
}

void reject_cycles(const EventLog& log, const std::unordered_map<std::string, std::size_t>& index) {
    std::vector<std::size_t> indegree(log.size(), 0);
    std::vector<std::vector<std::size_t>> dependents(log.size());
    for (std::size_t i = 0; i < log.size(); ++i)
        for (const auto& d : log[i].deps) {
            dependents[index.at(d)].push_back(i);
            ++indegree[i];
        }
    std::vector<std::size_t> ready;
    for (std::size_t i = 0; i < log.size(); ++i)
        if (indegree[i] == 0) ready.push_back(i);
    std::size_t visited = 0;
    while (!ready.empty()) {
        const auto i = ready.back();
        ready.pop_back();
        ++visited;
        for (auto j : dependents[i])
            if (--indegree[j] == 0) ready.push_back(j);
    }
    if (visited != log.size()) throw std::invalid_argument("event log has cyclic dependencies");
}

}  // namespace

std::string_view to_string(Site s) {
    switch (s) {
        case Site::A: return "A";
        case Site::B: return "B";
        case Site::Meeting: return "Meeting";
    }
    return "?";
}

std::string_view to_string(EventKind k) {
    switch (k) {
        case EventKind::coin_flip: return "coin_flip";
        case EventKind::button_press: return "button_press";
        case EventKind::split: return "split";
        case EventKind::light_flash: return "light_flash";
        case EventKind::depart: return "depart";
        case EventKind::meet: return "meet";
        case EventKind::match: return "match";
    }
    return "?";
}

std::optional<Site> site_from_string(std::string_view s) {
    for (auto v : {Site::A, Site::B, Site::Meeting})
        if (to_string(v) == s) return v;
    return std::nullopt;
}

std::optional<EventKind> kind_from_string(std::string_view s) {
    for (auto v : {EventKind::coin_flip, EventKind::button_press, EventKind::split, EventKind::light_flash,
                   EventKind::depart, EventKind::meet, EventKind::match})
        if (to_string(v) == s) return v;
    return std::nullopt;
}

std::string_view to_string(Rule r) {
    switch (r) {
        case Rule::light_cone: return "light_cone";
        case Rule::cross_site: return "cross_site";
        case Rule::not_earlier: return "not_earlier";
    }
    return "?";
}

CausalReport audit(const EventLog& log, double c) {
    if (!(c > 0.0)) throw std::invalid_argument("signal speed must be positive");
    const auto index = index_ids(log);
    reject_cycles(log, index);

    CausalReport report;
    report.n_events = log.size();
    for (const auto& e : log) {
        for (const auto& dep_id : e.deps) {
            const auto& d = log[index.at(dep_id)];
            const double travel = std::abs(e.position - d.position) / c;
            const double dt = e.time - d.time;
            if (dt <= 0.0 && travel == 0.0)
                report.violations.push_back({e.id, d.id, d.time, e.time, Rule::not_earlier});
            else if (dt < travel - kTimeEpsilon)
                report.violations.push_back({e.id, d.id, d.time + travel, e.time, Rule::light_cone});
            if (crosses_sites(e.site, d.site))
                report.violations.push_back({e.id, d.id, d.time + travel, e.time, Rule::cross_site});
        }
    }
    report.passed = report.violations.empty();
    return report;
}

bool sites_isolated_before_meeting(const EventLog& log) {
    const auto index = index_ids(log);
    std::vector<std::size_t> parent(log.size());
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    const auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t i = 0; i < log.size(); ++i) {
        if (log[i].site == Site::Meeting) continue;
        for (const auto& d : log[i].deps) {
            const auto j = index.at(d);
            if (log[j].site == Site::Meeting) continue;
            parent[find(i)] = find(j);
        }
    }
    std::unordered_map<std::size_t, unsigned> seen;  // root -> bit 1 for A, 2 for B
    for (std::size_t i = 0; i < log.size(); ++i) {
        if (log[i].site == Site::Meeting) continue;
        auto& mask = seen[find(i)];
        mask |= log[i].site == Site::A ? 1u : 2u;
        if (mask == 3u) return false;
    }
    return true;
}

SchedulePlan schedule_protocol(double separation, const std::vector<double>& round_times, double c,
                               double bob_offset, double round_duration) {
    if (!(separation > 0.0)) throw std::invalid_argument("separation must be positive");
    if (!(c > 0.0)) throw std::invalid_argument("signal speed must be positive");
    if (!(round_duration > 0.0)) throw std::invalid_argument("round duration must be positive");
    if (round_times.empty()) throw std::invalid_argument("schedule needs at least one round");
    for (std::size_t r = 1; r < round_times.size(); ++r) {
        if (!(round_times[r] > round_times[r - 1])) throw std::invalid_argument("round times must be increasing");
        if (round_times[r] - round_times[r - 1] <= round_duration)
            throw std::invalid_argument("rounds overlap: spacing must exceed the round duration");
    }
    // Every event of a round at A must be spacelike to every event of the
    // same round at B: the largest time gap is |offset| + duration.
    const double light_time = separation / c;
    if (std::abs(bob_offset) + round_duration >= light_time)
        throw std::invalid_argument("infeasible timing: rounds at A and B are not spacelike separated");

    SchedulePlan plan{};
    plan.separation = separation;
    plan.c = c;
    plan.alice_position = 0.0;
    plan.bob_position = separation;
    plan.meeting_position = separation / 2.0;
    plan.tick = round_duration / 3.0;
    const auto slot = [&](double t) { return RoundSlot{t, t + plan.tick, t + 2.0 * plan.tick, t + round_duration}; };
    for (double t : round_times) {
        plan.alice_rounds.push_back(slot(t));
        plan.bob_rounds.push_back(slot(t + bob_offset));
    }
    plan.depart_time = std::max(plan.alice_rounds.back().flash, plan.bob_rounds.back().flash) + plan.tick;
    plan.meet_time = plan.depart_time + (separation / 2.0) / c;
    plan.match_time = plan.meet_time + plan.tick;
    return plan;
}

// ------------------------------------------------------- fault injection

std::string_view to_string(Fault f) {
    switch (f) {
        case Fault::split_reads_remote_coin: return "split_reads_remote_coin";
        case Fault::flash_reads_remote_press: return "flash_reads_remote_press";
        case Fault::press_reads_remote_split: return "press_reads_remote_split";
        case Fault::early_meeting: return "early_meeting";
        case Fault::dependency_from_future: return "dependency_from_future";
    }
    return "?";
}

namespace {

std::vector<std::size_t> select(const EventLog& log, Site site, EventKind kind) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < log.size(); ++i)
        if (log[i].site == site && log[i].kind == kind) out.push_back(i);
    return out;
}

std::size_t pick(const std::vector<std::size_t>& candidates, std::size_t variant, const char* what) {
    if (candidates.empty()) throw std::invalid_argument(std::string("log has no ") + what + " to mutate");
    return candidates[variant % candidates.size()];
}

}  // namespace

EventLog inject_fault(const EventLog& log, Fault f, std::size_t variant) {
    EventLog out = log;
    switch (f) {
        case Fault::split_reads_remote_coin: {
            const auto victim = pick(select(out, Site::A, EventKind::split), variant, "A splits");
            const auto source = pick(select(out, Site::B, EventKind::coin_flip), variant, "B coin flips");
            out[victim].deps.push_back(out[source].id);
            break;
        }
        case Fault::flash_reads_remote_press: {
            const auto victim = pick(select(out, Site::B, EventKind::light_flash), variant, "B flashes");
            const auto presses = select(out, Site::A, EventKind::button_press);
            // the latest A press that precedes the victim keeps the log acyclic
            std::size_t source = pick(presses, 0, "A presses");
            for (auto p : presses)
                if (out[p].time < out[victim].time) source = p;
            out[victim].deps.push_back(out[source].id);
            break;
        }
        case Fault::press_reads_remote_split: {
            const auto victim = pick(select(out, Site::A, EventKind::button_press), variant, "A presses");
            const auto splits = select(out, Site::B, EventKind::split);
            std::size_t source = pick(splits, 0, "B splits");
            for (auto s : splits)
                if (out[s].time < out[victim].time) source = s;
            out[victim].deps.push_back(out[source].id);
            break;
        }
        case Fault::early_meeting: {
            const auto meets = select(out, Site::Meeting, EventKind::meet);
            const auto victim = pick(meets, variant, "meet events");
            double latest_dep = -INFINITY;
            for (const auto& d : out[victim].deps)
                for (const auto& e : out)
                    if (e.id == d) latest_dep = std::max(latest_dep, e.time);
            if (!std::isfinite(latest_dep)) throw std::invalid_argument("meet event has no dependencies");
            // halfway through the travel time: too early for the arriving signal
            out[victim].time = latest_dep + (out[victim].time - latest_dep) / 2.0;
            break;
        }
        case Fault::dependency_from_future: {
            const Site site = variant % 2 == 0 ? Site::A : Site::B;
            const auto coins = select(out, site, EventKind::coin_flip);
            if (coins.size() < 2) throw std::invalid_argument("need two coin flips at one site to plant a future dependency");
            const auto r = (variant / 2) % (coins.size() - 1);
            out[coins[r]].deps.push_back(out[coins[r + 1]].id);
            break;
        }
    }
    return out;
}

}  // namespace parlives::locality
