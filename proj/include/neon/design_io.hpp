#pragma once

#include <json.hpp>

#include "neon/neon_design.hpp"
#include "neon/noisy_design.hpp"

namespace neon {

// Versioned documents with integer assignment / circling arrays; a reload is
// bit-exact, no re-derivation happens on the way in.
inline constexpr int kDesignSchemaVersion = 1;

nlohmann::ordered_json to_json(const SplitDesign& design);
SplitDesign split_design_from_json(const nlohmann::json& j);

nlohmann::ordered_json to_json(const NeonDesign& design);
NeonDesign neon_design_from_json(const nlohmann::json& j);

nlohmann::ordered_json to_json(const NoisyDesign& design);
NoisyDesign noisy_design_from_json(const nlohmann::json& j);

} // namespace neon
