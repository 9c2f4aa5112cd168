#pragma once

#include <stdexcept>
#include <string>

#include "avss/simnet.hpp"

namespace avss {

struct ScenarioParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Strict parser: unknown keys anywhere are errors, n and t are required,
// everything else defaults (batch 1, seed 0, random scheduler, pairing
// backend, one trial). Throws ScenarioParseError with a usable message.
Scenario parse_scenario(const std::string& json_text);

std::string scenario_to_json(const Scenario& sc);

}  // namespace avss
