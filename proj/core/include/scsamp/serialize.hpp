#pragma once

// JSON form of states, used for debugging dumps and cascade checkpoints.
//
//   PureCSS: {"kind": "pure", "modes": M,
//             "terms": [{"coeff": [re, im], "labels": [[re, im], ...]}, ...]}
//   DyadMix: {"kind": "dyads", "modes": M,
//             "terms": [{"coeff": [re, im], "ket": [...], "bra": [...]}, ...]}

#include <nlohmann/json.hpp>

#include "scsamp/cstate.hpp"

namespace scsamp {

nlohmann::json to_json(const PureCSS& s);
nlohmann::json to_json(const DyadMix& m);

// Throw std::invalid_argument on schema violations.
PureCSS pure_from_json(const nlohmann::json& j);
DyadMix dyads_from_json(const nlohmann::json& j);

}  // namespace scsamp
