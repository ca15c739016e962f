#pragma once

#include <json.hpp>

#include "nonrecip/potentials.hpp"

namespace nonrecip {

// {"model": "morse_scattering" | "morse_penetrating", "v": ..., "mu": ...}
// {"model": "delta_comb", "sites": [{"position": x, "strength": {"re": ., "im": .}}, ...]}
// {"model": "double_delta", "lambda": {"re": ., "im": .}, "a": ...}   (input only)
//
// Complex numbers are {"re": ..., "im": ...}; a bare number is read as real.

nlohmann::json complex_to_json(Complex z);
Complex complex_from_json(const nlohmann::json& j);

nlohmann::json potential_to_json(const PotentialSpec& spec);

/// Throws ParameterError on unknown models, missing fields or invalid values.
PotentialSpec potential_from_json(const nlohmann::json& j);

}  // namespace nonrecip
