#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "phasecal/config.hpp"

namespace phasecal {

/// Config file schema (flat `key = value`, `#` comments, per-chain subsections):
///
///   carrier_freq_hz = 3.75e9
///   ...
///   [chain.0]
///   theta_rf_rad = 0.35
///   [rx.ota]
///   phi_rf_rad = 0.4
///
/// Unknown keys, duplicate keys, malformed values and missing required keys are
/// ConfigErrors. The result is passed through validate().
SystemConfig parse_config(std::string_view text);
SystemConfig load_config_file(const std::string& path);

/// Required top-level keys, in schema order.
const std::vector<std::string>& required_config_keys();

/// Canonical text form; parse_config(to_config_text(c)) == c for validated c.
std::string to_config_text(const SystemConfig& config);

/// FNV-1a 64 over the canonical text.
std::uint64_t config_hash(const SystemConfig& config);

/// Shortest round-trip decimal form of a double ("inf"/"-inf"/"nan" for non-finite).
std::string format_double(double v);

}  // namespace phasecal
