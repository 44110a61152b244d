#pragma once

#include <string_view>
#include <vector>

#include "phasecal/config.hpp"

namespace phasecal {

/// Bundled configs: "table1_high" and "table1_low" (same text as configs/*.cfg).
std::string_view preset_config_text(std::string_view name);
const std::vector<std::string_view>& preset_names();
SystemConfig preset_config(std::string_view name);

}  // namespace phasecal
