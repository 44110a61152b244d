#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "phasecal/config.hpp"

namespace phasecal {

/// A named transformation of a base config. Every scenario keeps geometry,
/// framing and cycle count from the base and rewrites only what it names.
struct Scenario {
    std::string name;
    std::string description;
    std::string_view default_preset;  // base config when none is given
    std::function<SystemConfig(SystemConfig)> apply;
};

const std::vector<Scenario>& scenario_registry();
/// Throws ConfigError for unknown names.
const Scenario& find_scenario(std::string_view name);

/// Helpers shared by several scenarios.
SystemConfig without_impairments(SystemConfig config);

}  // namespace phasecal
