// phasecal: command-line front end.
//
//   phasecal simulate [config] --seed <u64> --out <dir> [--scenario <name>]
//                     [--transport inproc|udp] [--port <p>] [--cycles <L>] [--kde]
//   phasecal report <dir>
//   phasecal selftest
//   phasecal scenarios
//
// Exit codes: 0 success, 2 configuration error, 3 runtime error.

#include <cstdint>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "phasecal/config_io.hpp"
#include "phasecal/presets.hpp"
#include "phasecal/report_io.hpp"
#include "phasecal/scenarios.hpp"
#include "phasecal/simulation.hpp"
#include "selftest.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

/// A config argument is a file path; a bare preset name ("table1_high") selects
/// a bundled config; no argument selects the scenario's default preset.
phasecal::SystemConfig resolve_config(const std::string& arg, const phasecal::Scenario& scenario) {
    if (arg.empty()) return phasecal::preset_config(scenario.default_preset);
    if (std::filesystem::exists(arg)) return phasecal::load_config_file(arg);
    for (auto name : phasecal::preset_names())
        if (arg == name) return phasecal::preset_config(name);
    throw phasecal::ConfigError("config file '" + arg + "' not found");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"MIMO transmit phase calibration simulator"};
    app.require_subcommand(1);

    auto* sim = app.add_subcommand("simulate", "run an L-cycle calibration campaign and export traces");
    std::string config_arg;
    std::optional<std::uint64_t> seed;
    std::string out_dir;
    std::string scenario_name = "default";
    std::string transport_name = "inproc";
    std::uint16_t port = 0;
    std::optional<std::size_t> cycles;
    bool kde = false;
    sim->add_option("config", config_arg, "config file or bundled preset name (table1_high, table1_low)");
    sim->add_option("--seed", seed, "RNG seed (overrides rng_seed in the config)");
    sim->add_option("--out", out_dir, "output directory")->required();
    sim->add_option("--scenario", scenario_name, "scenario name (see `phasecal scenarios`)");
    sim->add_option("--transport", transport_name, "feedback transport")->check(CLI::IsMember({"inproc", "udp"}));
    sim->add_option("--port", port, "UDP base port (0 = ephemeral); the OTA link uses port + 1");
    sim->add_option("--cycles", cycles, "number of cycles L (overrides num_cycles)")->check(CLI::PositiveNumber);
    sim->add_flag("--kde", kde, "also export KDE grids of every jitter cell");

    auto* rep = app.add_subcommand("report", "pretty-print the report of a simulate output directory");
    std::string report_dir;
    rep->add_option("dir", report_dir, "directory written by simulate")->required();

    auto* self = app.add_subcommand("selftest", "run the built-in oracle checks");
    auto* list = app.add_subcommand("scenarios", "list the scenario registry");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (*sim) {
            const auto& scenario = phasecal::find_scenario(scenario_name);
            phasecal::RunManifest manifest;
            manifest.options.config = resolve_config(config_arg, scenario);
            manifest.options.seed = seed;
            manifest.options.cycles = cycles;
            manifest.options.scenario = scenario_name;
            manifest.options.transport = phasecal::transport_kind_from_string(transport_name);
            manifest.options.port = port;
            manifest.output_dir = out_dir;
            manifest.export_kde = kde;
            phasecal::ExportedFiles files;
            const auto result = phasecal::run_manifest(manifest, &files);
            std::cout << phasecal::format_report_table(result.report);
            std::cout << "wrote " << files.report_json.string() << ", " << files.trace_csv.string();
            if (!files.kde_csv.empty()) std::cout << " and " << files.kde_csv.size() << " KDE grids";
            std::cout << '\n';
            if (result.lost_messages > 0)
                std::cerr << "warning: " << result.lost_messages << " feedback messages lost\n";
        } else if (*rep) {
            const auto report = phasecal::load_report_json(std::filesystem::path(report_dir) / "report.json");
            std::cout << phasecal::format_report_table(report);
        } else if (*self) {
            return phasecal::tools::run_selftest(std::cout) == 0 ? kExitOk : kExitRuntime;
        } else if (*list) {
            for (const auto& s : phasecal::scenario_registry())
                std::cout << s.name << "  [" << s.default_preset << "]  " << s.description << '\n';
        }
    } catch (const phasecal::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
    return kExitOk;
}
