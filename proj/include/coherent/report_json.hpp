#pragma once

#include <json.hpp>

#include "coherent/coherence.hpp"
#include "coherent/dynamics.hpp"

namespace coherent {

// Rationals are serialized as "p/q" strings so reports parse back exactly.

nlohmann::json to_json(const DiscreteMeasure& m);
nlohmann::json to_json(const RepresentationPair& rep);
nlohmann::json to_json(const SignedPair& sp);
nlohmann::json to_json(const CoherenceReport& report);
nlohmann::json to_json(const ExtremalityReport& report);
nlohmann::json to_json(const Histogram& h);

DiscreteMeasure measure_from_json(const nlohmann::json& j);

}  // namespace coherent
