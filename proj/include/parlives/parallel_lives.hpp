#pragma once

// Toy universe with locally splitting agents.
//
// Each button press splits every bubble of the pressing agent into two
// children, one per light colour. Nothing crosses between the agents until
// they meet, at which point every Alice bubble is paired with the single Bob
// bubble whose transcript satisfies a XOR b = x AND y on every round.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "parlives/locality.hpp"
#include "parlives/rng.hpp"

namespace parlives::lives {

using Bit = std::uint8_t;

/// Light colours as output bits.
inline constexpr Bit kGreen = 0;
inline constexpr Bit kRed = 1;

enum class Agent { Alice, Bob };
std::string_view to_string(Agent a);

struct Round {
    Bit input = 0;
    Bit output = 0;
    bool pressed = true;  // false for a round in which this agent did not press

    bool operator==(const Round&) const = default;
};

struct Transcript {
    std::vector<Round> rounds;

    std::size_t size() const noexcept { return rounds.size(); }
    bool operator==(const Transcript&) const = default;
};

struct Bubble {
    Agent agent;
    double weight;
    Transcript transcript;
    std::string last_event;  // id of the most recent event inside this bubble

    bool operator==(const Bubble&) const = default;
};

struct AgentWorld {
    Agent agent;
    double position;
    std::vector<Bubble> bubbles;
    locality::EventLog events;
    std::string frontier;  // latest agent-level event (coin flip or press)

    std::size_t rounds() const noexcept { return bubbles.front().transcript.size(); }
};

AgentWorld make_world(Agent agent, double position);

/// Times of the four events of one round.
using locality::RoundSlot;

/// Records a free coin flip (no dependencies) at the agent's site.
AgentWorld flip_coin(const AgentWorld& world, double time);

/// Splits every bubble into a green and a red child of half the weight.
AgentWorld press_button(const AgentWorld& world, Bit input, const RoundSlot& slot);
/// Same, with the round placed at t = 1 + rounds() and a 0.3 round duration.
AgentWorld press_button(const AgentWorld& world, Bit input);

/// A round in which this agent does not press; bubbles do not split.
AgentWorld idle_round(const AgentWorld& world);

/// Departure towards the meeting point, depending on every bubble's history.
AgentWorld depart(const AgentWorld& world, double time);

/// Throws std::logic_error if any world invariant fails: positive weights
/// summing to 1, equal transcript lengths, distinct transcripts, bubble count
/// 2^(pressed rounds), shared inputs.
void check_world(const AgentWorld& world);

struct MatchedPair {
    std::size_t alice_index;
    std::size_t bob_index;
    Bubble alice_bubble;
    Bubble bob_bubble;
    double pair_weight;
};

/// Round-by-round check of a XOR b = x AND y on every round both pressed.
bool satisfies_pr_predicate(const MatchedPair& pair);

/// Pairs the two worlds' bubbles. With both agents pressing in every round
/// this is a bijection and pair_weight equals each bubble's weight. Rounds in
/// which only one agent pressed impose no constraint; each bubble of the
/// splitting side then shares the other side's bubble, with
/// pair_weight = wA * wB * 2^(rounds both pressed).
/// Throws std::invalid_argument on a round-count mismatch.
std::vector<MatchedPair> match_bubbles(const AgentWorld& alice, const AgentWorld& bob);

/// True iff every bubble of each world appears in exactly one pair.
bool is_bijection(const std::vector<MatchedPair>& pairs, const AgentWorld& alice, const AgentWorld& bob);

enum class PressOrder { interleaved, alice_first, bob_first };

struct ProtocolOptions {
    double separation = 10.0;
    double c = 1.0;
    double first_round = 1.0;
    double round_spacing = 1.0;
    double round_duration = 0.3;
    PressOrder order = PressOrder::interleaved;
};

struct ExperimentRecord {
    std::size_t n_rounds = 0;
    std::vector<Bit> alice_inputs;
    std::vector<Bit> bob_inputs;
    AgentWorld alice;
    AgentWorld bob;
    std::vector<MatchedPair> pairs;
    locality::EventLog events;  // time ordered, dependencies precede dependents
};

/// Deterministic protocol run for given inputs (equal, non-zero length).
ExperimentRecord run_protocol(const std::vector<Bit>& alice_inputs, const std::vector<Bit>& bob_inputs,
                              const ProtocolOptions& options = {});

/// Inputs drawn from `rng` (Alice then Bob, per round), then run_protocol.
ExperimentRecord run_experiment(std::size_t n_rounds, Rng& rng, const ProtocolOptions& options = {});

/// Weight-averaged fraction of rounds (with both agents pressing) on which
/// the matched pair satisfies a XOR b = x AND y. Throws std::invalid_argument
/// when there is nothing to average.
double pr_success_probability(const ExperimentRecord& record);

/// Weighted probability of a red light for `agent`, per round, over the pairs.
std::vector<double> red_marginals(const ExperimentRecord& record, Agent agent);

}  // namespace parlives::lives
