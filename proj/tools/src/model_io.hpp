#pragma once

// Model JSON: {"family": ..., "M": ..., "theta": ..., "v0": ..., "v1": ..., "T": ...}.
// Static cavities use "L" for the length.  Written files also carry derived
// quantities, which are ignored on input.

#include "cavity/catalog.hpp"

#include <json.hpp>

#include <string>

namespace cavity::cli {

nlohmann::ordered_json model_to_json(const CavityModel& model);

/// Throws std::invalid_argument on missing or malformed fields.
ModelSpec spec_from_json(const nlohmann::json& j);

ModelSpec spec_from_file(const std::string& path);

/// Defaults used when a family is picked on the command line without all of
/// its parameters.
ModelSpec default_spec(Family family);

}  // namespace cavity::cli
