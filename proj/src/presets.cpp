#include "phasecal/presets.hpp"

#include <string>

#include "phasecal/config_io.hpp"
#include "preset_data.hpp"

namespace phasecal {

std::string_view preset_config_text(std::string_view name) {
    if (name == "table1_high") return detail::kPresetTable1High;
    if (name == "table1_low") return detail::kPresetTable1Low;
    throw ConfigError("unknown preset '" + std::string(name) + "'");
}

const std::vector<std::string_view>& preset_names() {
    static const std::vector<std::string_view> names{"table1_high", "table1_low"};
    return names;
}

SystemConfig preset_config(std::string_view name) { return parse_config(preset_config_text(name)); }

}  // namespace phasecal
