#pragma once

#include "harmony/simulation.hpp"

#include <string>
#include <string_view>

namespace harmony {

/// Parses a JSON scenario. Missing keys keep their defaults, so an empty
/// document (or empty text) yields the calibrated baseline. Unknown keys,
/// wrong types and out-of-range values raise ConfigError with the dotted
/// path of the field.
ScenarioConfig parseScenario(std::string_view text);

ScenarioConfig loadScenarioFile(const std::string& path);

/// Every field, in a fixed order; parseScenario(emitScenario(c)) == c.
std::string emitScenario(const ScenarioConfig& config);

AvoidanceCondition parseCondition(std::string_view text);

}  // namespace harmony
