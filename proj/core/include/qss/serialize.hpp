#pragma once

#include <json.hpp>

#include "qss/adversary.hpp"
#include "qss/protocol.hpp"

namespace qss {

// Insertion-ordered JSON so identical inputs serialize byte-identically.
using Json = nlohmann::ordered_json;

Json transcript_to_json(const ProtocolTranscript& transcript);
Json stats_to_json(const AttackStats& stats);

}  // namespace qss
