#pragma once

// JSON forms of the simulation records. Bits are 0/1 integers; light colours
// are additionally spelled out (0 = green, 1 = red).

#include <json.hpp>

#include "parlives/chsh.hpp"
#include "parlives/entanglement.hpp"
#include "parlives/locality.hpp"
#include "parlives/parallel_lives.hpp"
#include "parlives/qcore.hpp"

namespace parlives::io {

using nlohmann::json;

/// Complex entries as [re, im] pairs, row-major.
json to_json(const qcore::CMatrix& m);
json to_json(const qcore::PureState& s);
json to_json(const qcore::DensityMatrix& rho);

json to_json(const locality::SpacetimeEvent& e);
/// Flat array of events.
json to_json(const locality::EventLog& log);
json to_json(const locality::CausalReport& r);
/// Inverse of to_json(EventLog). Throws std::invalid_argument on bad input.
locality::EventLog event_log_from_json(const json& j);

json to_json(const lives::Bubble& b);
json to_json(const lives::ExperimentRecord& r, bool include_events = false);

json to_json(const entanglement::CorrelatorEstimate& e);
json to_json(const entanglement::ChainReport& r);

json to_json(const chsh::ChshResult& r);

}  // namespace parlives::io
