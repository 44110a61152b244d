#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "phasecal/config.hpp"
#include "phasecal/metrics.hpp"
#include "phasecal/transport.hpp"

namespace phasecal {

struct SimulationOptions {
    SystemConfig config;
    std::optional<std::uint64_t> seed;          // overrides config.rng_seed
    std::optional<std::size_t> cycles;          // overrides config.num_cycles
    std::string scenario = "default";
    TransportKind transport = TransportKind::inproc;
    std::uint16_t port = 0;                     // udp: local link on port, OTA link on port + 1
};

struct SimulationResult {
    SystemConfig config;  // resolved (scenario applied, validated)
    EstimateStreams streams;
    CalibrationReport report;
    std::uint64_t lost_messages = 0;
};

/// Runs the L-cycle campaign: frame -> TX impairments -> local and OTA channel ->
/// both receivers -> feedback -> smoothed calibrator. Cycles are sequential
/// because precoding at cycle l uses estimates from cycles < l only.
/// Deterministic for a given (config, seed, scenario).
SimulationResult run_simulation(const SimulationOptions& options);

struct RunManifest {
    SimulationOptions options;
    std::filesystem::path output_dir;
    bool export_kde = false;
};

struct ExportedFiles {
    std::filesystem::path report_json;
    std::filesystem::path trace_csv;
    std::filesystem::path config;
    std::vector<std::filesystem::path> kde_csv;
};

/// Writes report.json, trace.csv, config.cfg and (optionally) kde/*.csv.
ExportedFiles export_traces(const SimulationResult& result, const std::filesystem::path& output_dir,
                            bool export_kde);

SimulationResult run_manifest(const RunManifest& manifest, ExportedFiles* files = nullptr);

}  // namespace phasecal
