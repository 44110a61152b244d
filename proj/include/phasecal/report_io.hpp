#pragma once

#include <filesystem>
#include <string>

#include "phasecal/metrics.hpp"

namespace phasecal {

/// Report JSON: metadata, coherence and one object per chain holding the
/// local/OTA x measured/calibrated cells (RMS c2c jitter, mean phase and the
/// Gaussianity statistics). Jitter sample arrays are not part of the JSON;
/// they live in the trace CSV.
std::string report_to_json(const CalibrationReport& report);
CalibrationReport report_from_json(const std::string& text);

void write_report_json(const CalibrationReport& report, const std::filesystem::path& path);
CalibrationReport load_report_json(const std::filesystem::path& path);

/// Header `cycle,chain,receiver,theta_rad,alpha_s,residual_rad`; one row per
/// (cycle, chain, receiver), cycle-major.
void write_trace_csv(const EstimateStreams& streams, double carrier_hz, const std::filesystem::path& path);

/// Header `x_s,density`.
void write_kde_csv(const KdeGrid& grid, const std::filesystem::path& path);

/// Table-shaped text summary (rows = chains, columns = state x receiver).
std::string format_report_table(const CalibrationReport& report);

}  // namespace phasecal
