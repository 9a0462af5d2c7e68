#pragma once

// Spacetime event log and causal auditor.
//
// Space is one-dimensional. An event may depend on another only if a signal
// at speed c could have carried the information in time, and before the
// meeting no event at site A may depend on anything from site B (or the
// reverse).

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace parlives::locality {

enum class Site { A, B, Meeting };
enum class EventKind { coin_flip, button_press, split, light_flash, depart, meet, match };

std::string_view to_string(Site s);
std::string_view to_string(EventKind k);
std::optional<Site> site_from_string(std::string_view s);
std::optional<EventKind> kind_from_string(std::string_view s);

struct SpacetimeEvent {
    std::string id;
    Site site;
    double position;
    double time;
    EventKind kind;
    std::vector<std::string> deps;
};

using EventLog = std::vector<SpacetimeEvent>;

enum class Rule {
    light_cone,  // dependency outside the past light cone
    cross_site,  // A-site event depends on B-site data or vice versa
    not_earlier  // dependency is not strictly earlier in time
};
std::string_view to_string(Rule r);

struct Violation {
    std::string event;
    std::string dep;
    double required_time;  // earliest admissible time for `event`
    double actual_time;
    Rule rule;
};

struct CausalReport {
    std::size_t n_events = 0;
    std::vector<Violation> violations;
    bool passed = true;
};

/// Checks every dependency edge of `log`. Throws std::invalid_argument on a
/// malformed log (duplicate ids, unknown dependency ids, cycles) or c <= 0.
CausalReport audit(const EventLog& log, double c = 1.0);

/// True when, restricted to events at sites A and B, no dependency chain
/// connects an A event to a B event.
bool sites_isolated_before_meeting(const EventLog& log);

// ------------------------------------------------------------------ schedule

struct RoundSlot {
    double coin;
    double press;
    double split;
    double flash;
};

struct SchedulePlan {
    double separation;
    double c;
    double alice_position;
    double bob_position;
    double meeting_position;
    std::vector<RoundSlot> alice_rounds;
    std::vector<RoundSlot> bob_rounds;
    double depart_time;
    double meet_time;
    double match_time;
    /// Spacing between consecutive events inside one round.
    double tick;
};

/// Places both agents' coin/press/split/flash events and the depart, meet
/// and match events. Rounds at A start at `round_times`; rounds at B start
/// at round_times + bob_offset. Each round lasts `round_duration`.
///
/// Throws std::invalid_argument when round_times are not increasing, the
/// separation or c is not positive, rounds overlap, or some round's events
/// at A are not spacelike separated from the same round's events at B.
SchedulePlan schedule_protocol(double separation, const std::vector<double>& round_times, double c = 1.0,
                               double bob_offset = 0.0, double round_duration = 0.3);

// ------------------------------------------------------- fault injection

enum class Fault {
    split_reads_remote_coin,      // A split depends on B's coin flip
    flash_reads_remote_press,     // B flash depends on A's button press
    press_reads_remote_split,     // A press depends on a B split in an earlier round
    early_meeting,                // meet stamped before light from the departures arrives
    dependency_from_future,       // a local event depends on a later local event
};
inline constexpr std::size_t kFaultKinds = 5;
std::string_view to_string(Fault f);

/// Copy of `log` with one planted fault. `variant` selects which round or
/// event is mutated (taken modulo the number of candidates). Throws
/// std::invalid_argument if the log has no suitable events.
EventLog inject_fault(const EventLog& log, Fault f, std::size_t variant);

}  // namespace parlives::locality
