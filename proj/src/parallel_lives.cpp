#include "parlives/parallel_lives.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace parlives::lives {

using locality::EventKind;
using locality::Site;
using locality::SpacetimeEvent;

namespace {

constexpr std::size_t kMaxRounds = 62;

Site site_of(Agent a) { return a == Agent::Alice ? Site::A : Site::B; }

std::string prefix(const AgentWorld& w) { return std::string(locality::to_string(site_of(w.agent))); }

std::string round_id(const AgentWorld& w, std::size_t r, const char* what) {
    return prefix(w) + ".r" + std::to_string(r) + "." + what;
}

void check_bit(Bit b) {
    if (b > 1) throw std::invalid_argument("input bits must be 0 or 1");
}

}  // namespace

std::string_view to_string(Agent a) { return a == Agent::Alice ? "Alice" : "Bob"; }

AgentWorld make_world(Agent agent, double position) {
    return AgentWorld{agent, position, {Bubble{agent, 1.0, {}, {}}}, {}, {}};
}

AgentWorld flip_coin(const AgentWorld& world, double time) {
    AgentWorld w = world;
    SpacetimeEvent e{round_id(w, w.rounds(), "coin"), site_of(w.agent), w.position, time, EventKind::coin_flip, {}};
    w.frontier = e.id;
    w.events.push_back(std::move(e));
    return w;
}

AgentWorld press_button(const AgentWorld& world, Bit input, const RoundSlot& slot) {
    check_bit(input);
    const auto r = world.rounds();
    if (r >= kMaxRounds) throw std::length_error("too many rounds");
    const Site site = site_of(world.agent);

    AgentWorld w{world.agent, world.position, {}, world.events, {}};
    SpacetimeEvent press{round_id(world, r, "press"), site, world.position, slot.press, EventKind::button_press, {}};
    if (!world.frontier.empty()) press.deps.push_back(world.frontier);
    w.frontier = press.id;
    w.events.push_back(press);

    w.bubbles.reserve(world.bubbles.size() * 2);
    for (std::size_t i = 0; i < world.bubbles.size(); ++i) {
        const Bubble& parent = world.bubbles[i];
        SpacetimeEvent split{round_id(world, r, "split") + "." + std::to_string(i), site, world.position, slot.split,
                             EventKind::split, {press.id}};
        if (!parent.last_event.empty()) split.deps.push_back(parent.last_event);
        w.events.push_back(split);
        for (Bit colour : {kGreen, kRed}) {
            const auto child_index = 2 * i + colour;
            SpacetimeEvent flash{round_id(world, r, "flash") + "." + std::to_string(child_index), site,
                                 world.position, slot.flash, EventKind::light_flash, {split.id}};
            Bubble child{parent.agent, parent.weight / 2.0, parent.transcript, flash.id};
            child.transcript.rounds.push_back(Round{input, colour, true});
            w.bubbles.push_back(std::move(child));
            w.events.push_back(std::move(flash));
        }
    }
    return w;
}

AgentWorld press_button(const AgentWorld& world, Bit input) {
    const double t = 1.0 + static_cast<double>(world.rounds());
    return press_button(world, input, RoundSlot{t, t + 0.1, t + 0.2, t + 0.3});
}

AgentWorld idle_round(const AgentWorld& world) {
    if (world.rounds() >= kMaxRounds) throw std::length_error("too many rounds");
    AgentWorld w = world;
    for (auto& b : w.bubbles) b.transcript.rounds.push_back(Round{0, 0, false});
    return w;
}

AgentWorld depart(const AgentWorld& world, double time) {
    AgentWorld w = world;
    SpacetimeEvent e{prefix(w) + ".depart", site_of(w.agent), w.position, time, EventKind::depart, {}};
    std::set<std::string> deps;
    if (!w.frontier.empty()) deps.insert(w.frontier);
    for (const auto& b : w.bubbles)
        if (!b.last_event.empty()) deps.insert(b.last_event);
    e.deps.assign(deps.begin(), deps.end());
    w.frontier = e.id;
    w.events.push_back(std::move(e));
    return w;
}

void check_world(const AgentWorld& world) {
    if (world.bubbles.empty()) throw std::logic_error("world has no bubbles");
    const auto n = world.rounds();
    const auto& first = world.bubbles.front().transcript.rounds;
    std::size_t pressed = 0;
    for (const auto& r : first) pressed += r.pressed ? 1 : 0;
    if (world.bubbles.size() != (std::size_t{1} << pressed)) throw std::logic_error("bubble count is not 2^rounds");

    double total = 0.0;
    std::set<std::vector<Bit>> seen;
    for (const auto& b : world.bubbles) {
        if (b.agent != world.agent) throw std::logic_error("bubble belongs to another agent");
        if (!(b.weight > 0.0 && b.weight <= 1.0)) throw std::logic_error("bubble weight outside (0,1]");
        if (b.weight != std::ldexp(1.0, -static_cast<int>(pressed))) throw std::logic_error("bubble weight is not 2^-rounds");
        if (b.transcript.size() != n) throw std::logic_error("transcripts have different lengths");
        std::vector<Bit> outputs;
        for (std::size_t i = 0; i < n; ++i) {
            const auto& r = b.transcript.rounds[i];
            if (r.input != first[i].input || r.pressed != first[i].pressed)
                throw std::logic_error("bubbles disagree on the agent's inputs");
            outputs.push_back(r.output);
        }
        if (!seen.insert(std::move(outputs)).second) throw std::logic_error("duplicate transcript");
        total += b.weight;
    }
    if (std::abs(total - 1.0) > 1e-12) throw std::logic_error("bubble weights do not sum to 1");
}

bool satisfies_pr_predicate(const MatchedPair& pair) {
    const auto& a = pair.alice_bubble.transcript.rounds;
    const auto& b = pair.bob_bubble.transcript.rounds;
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i].pressed || !b[i].pressed) continue;
        if ((a[i].output ^ b[i].output) != (a[i].input & b[i].input)) return false;
    }
    return true;
}

std::vector<MatchedPair> match_bubbles(const AgentWorld& alice, const AgentWorld& bob) {
    if (alice.agent != Agent::Alice || bob.agent != Agent::Bob) throw std::invalid_argument("match_bubbles(alice, bob)");
    const auto n = alice.rounds();
    if (bob.rounds() != n) throw std::invalid_argument("agents completed different numbers of rounds");

    const auto& xs = alice.bubbles.front().transcript.rounds;
    const auto& ys = bob.bubbles.front().transcript.rounds;

    std::unordered_map<std::uint64_t, std::size_t> bob_by_outputs;
    for (std::size_t j = 0; j < bob.bubbles.size(); ++j) {
        std::uint64_t key = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (ys[i].pressed && bob.bubbles[j].transcript.rounds[i].output) key |= std::uint64_t{1} << i;
        bob_by_outputs.emplace(key, j);
    }

    std::vector<std::size_t> bob_only;
    int both = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (xs[i].pressed && ys[i].pressed) ++both;
        if (!xs[i].pressed && ys[i].pressed) bob_only.push_back(i);
    }

    std::vector<MatchedPair> pairs;
    pairs.reserve(alice.bubbles.size() << bob_only.size());
    for (std::size_t a = 0; a < alice.bubbles.size(); ++a) {
        const auto& rounds = alice.bubbles[a].transcript.rounds;
        std::uint64_t base = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (!xs[i].pressed || !ys[i].pressed) continue;
            const Bit b = rounds[i].output ^ (xs[i].input & ys[i].input);
            if (b) base |= std::uint64_t{1} << i;
        }
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << bob_only.size()); ++mask) {
            std::uint64_t key = base;
            for (std::size_t k = 0; k < bob_only.size(); ++k)
                if ((mask >> k) & 1u) key |= std::uint64_t{1} << bob_only[k];
            const auto it = bob_by_outputs.find(key);
            if (it == bob_by_outputs.end()) throw std::logic_error("no Bob bubble with the required transcript");
            const auto& ab = alice.bubbles[a];
            const auto& bb = bob.bubbles[it->second];
            pairs.push_back({a, it->second, ab, bb, std::ldexp(ab.weight * bb.weight, both)});
        }
    }
    return pairs;
}

bool is_bijection(const std::vector<MatchedPair>& pairs, const AgentWorld& alice, const AgentWorld& bob) {
    if (pairs.size() != alice.bubbles.size() || pairs.size() != bob.bubbles.size()) return false;
    std::vector<int> a_count(alice.bubbles.size(), 0), b_count(bob.bubbles.size(), 0);
    for (const auto& p : pairs) {
        if (p.alice_index >= a_count.size() || p.bob_index >= b_count.size()) return false;
        ++a_count[p.alice_index];
        ++b_count[p.bob_index];
    }
    const auto once = [](int c) { return c == 1; };
    return std::all_of(a_count.begin(), a_count.end(), once) && std::all_of(b_count.begin(), b_count.end(), once);
}

ExperimentRecord run_protocol(const std::vector<Bit>& alice_inputs, const std::vector<Bit>& bob_inputs,
                              const ProtocolOptions& options) {
    if (alice_inputs.empty()) throw std::invalid_argument("protocol needs at least one round");
    if (alice_inputs.size() != bob_inputs.size()) throw std::invalid_argument("both agents need one input per round");
    const auto n = alice_inputs.size();
    for (auto b : alice_inputs) check_bit(b);
    for (auto b : bob_inputs) check_bit(b);

    std::vector<double> times(n);
    for (std::size_t r = 0; r < n; ++r) times[r] = options.first_round + static_cast<double>(r) * options.round_spacing;
    const auto plan = locality::schedule_protocol(options.separation, times, options.c, 0.0, options.round_duration);

    AgentWorld alice = make_world(Agent::Alice, plan.alice_position);
    AgentWorld bob = make_world(Agent::Bob, plan.bob_position);
    const auto step = [](AgentWorld& w, Bit input, const RoundSlot& slot) {
        w = flip_coin(w, slot.coin);
        w = press_button(w, input, slot);
    };
    const auto run_alice = [&](std::size_t r) { step(alice, alice_inputs[r], plan.alice_rounds[r]); };
    const auto run_bob = [&](std::size_t r) { step(bob, bob_inputs[r], plan.bob_rounds[r]); };
    switch (options.order) {
        case PressOrder::interleaved:
            for (std::size_t r = 0; r < n; ++r) {
                run_alice(r);
                run_bob(r);
            }
            break;
        case PressOrder::alice_first:
            for (std::size_t r = 0; r < n; ++r) run_alice(r);
            for (std::size_t r = 0; r < n; ++r) run_bob(r);
            break;
        case PressOrder::bob_first:
            for (std::size_t r = 0; r < n; ++r) run_bob(r);
            for (std::size_t r = 0; r < n; ++r) run_alice(r);
            break;
    }
    alice = depart(alice, plan.depart_time);
    bob = depart(bob, plan.depart_time);

    ExperimentRecord rec;
    rec.n_rounds = n;
    rec.alice_inputs = alice_inputs;
    rec.bob_inputs = bob_inputs;
    rec.pairs = match_bubbles(alice, bob);

    locality::EventLog meeting;
    meeting.push_back({"M.meet", Site::Meeting, plan.meeting_position, plan.meet_time, EventKind::meet,
                       {alice.frontier, bob.frontier}});
    for (std::size_t k = 0; k < rec.pairs.size(); ++k) {
        const auto& p = rec.pairs[k];
        meeting.push_back({"M.match." + std::to_string(k), Site::Meeting, plan.meeting_position, plan.match_time,
                           EventKind::match, {"M.meet", p.alice_bubble.last_event, p.bob_bubble.last_event}});
    }

    rec.events.reserve(alice.events.size() + bob.events.size() + meeting.size());
    rec.events.insert(rec.events.end(), alice.events.begin(), alice.events.end());
    rec.events.insert(rec.events.end(), bob.events.begin(), bob.events.end());
    rec.events.insert(rec.events.end(), meeting.begin(), meeting.end());
    std::stable_sort(rec.events.begin(), rec.events.end(),
                     [](const SpacetimeEvent& a, const SpacetimeEvent& b) { return a.time < b.time; });

    rec.alice = std::move(alice);
    rec.bob = std::move(bob);
    return rec;
}

ExperimentRecord run_experiment(std::size_t n_rounds, Rng& rng, const ProtocolOptions& options) {
    if (n_rounds == 0) throw std::invalid_argument("experiment needs at least one round");
    std::vector<Bit> x(n_rounds), y(n_rounds);
    for (std::size_t r = 0; r < n_rounds; ++r) {
        x[r] = random_bit(rng);
        y[r] = random_bit(rng);
    }
    return run_protocol(x, y, options);
}

double pr_success_probability(const ExperimentRecord& record) {
    if (record.n_rounds == 0 || record.pairs.empty()) throw std::invalid_argument("record has no rounds");
    double success = 0.0;
    double total_weight = 0.0;
    for (const auto& p : record.pairs) {
        const auto& a = p.alice_bubble.transcript.rounds;
        const auto& b = p.bob_bubble.transcript.rounds;
        std::size_t counted = 0, good = 0;
        for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
            if (!a[i].pressed || !b[i].pressed) continue;
            ++counted;
            if ((a[i].output ^ b[i].output) == (a[i].input & b[i].input)) ++good;
        }
        if (counted == 0) throw std::invalid_argument("record has no two-sided rounds");
        success += p.pair_weight * static_cast<double>(good) / static_cast<double>(counted);
        total_weight += p.pair_weight;
    }
    return success / total_weight;
}

std::vector<double> red_marginals(const ExperimentRecord& record, Agent agent) {
    std::vector<double> red(record.n_rounds, 0.0);
    for (const auto& p : record.pairs) {
        const auto& rounds = (agent == Agent::Alice ? p.alice_bubble : p.bob_bubble).transcript.rounds;
        for (std::size_t i = 0; i < record.n_rounds && i < rounds.size(); ++i)
            if (rounds[i].output == kRed) red[i] += p.pair_weight;
    }
    return red;
}

}  // namespace parlives::lives
