#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "phasecal/config_io.hpp"
#include "phasecal/presets.hpp"
#include "phasecal/report_io.hpp"
#include "phasecal/scenarios.hpp"
#include "phasecal/simulation.hpp"

using namespace phasecal;

namespace {

SimulationOptions options(std::string scenario, std::size_t cycles, std::string preset = "table1_high") {
    SimulationOptions o;
    o.config = preset_config(preset);
    o.scenario = std::move(scenario);
    o.cycles = cycles;
    return o;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("scenario registry") {
    for (const char* name : {"default", "table1-highbw", "table1-lowbw", "clean", "constant-phase", "drift-only",
                             "warmup", "duration", "white-noise", "ota-vs-local"}) {
        CAPTURE(name);
        const auto& s = find_scenario(name);
        CHECK(validate(s.apply(preset_config(s.default_preset))).num_chains == 4);
    }
    CHECK_THROWS_AS(find_scenario("nope"), ConfigError);
}

TEST_CASE("clean scenario: report of all zeros") {
    const auto r = run_simulation(options("clean", 15));
    for (const auto& ch : r.report.chains)
        for (const auto& row : ch.cells)
            for (const auto& cell : row) {
                CHECK(cell.rms_c2c_s == 0.0);
                CHECK(cell.mean_phase_rad == 0.0);
            }
    CHECK(r.lost_messages == 0);
}

TEST_CASE("seed and cycle overrides") {
    auto o = options("default", 12);
    o.seed = 77;
    const auto r = run_simulation(o);
    CHECK(r.config.rng_seed == 77);
    CHECK(r.config.num_cycles == 12);
    CHECK(r.report.meta.seed == 77);
    o.seed = 78;
    CHECK(run_simulation(o).report != r.report);
}

TEST_CASE("causal feedback: the first residual is the raw estimate") {
    const auto r = run_simulation(options("default", 5));
    for (int rx = 0; rx < 2; ++rx)
        for (std::size_t m = 0; m < 4; ++m)
            CHECK(r.streams.residual_rad[rx][m][0] == r.streams.theta_rad[rx][m][0]);
}

TEST_CASE("drift-only run: calibrated cells zero, measured cells positive") {
    const auto r = run_simulation(options("drift-only", 60));
    for (const auto& ch : r.report.chains)
        for (auto kind : {ReceiverKind::local, ReceiverKind::ota}) {
            CHECK(ch.at(kind, CalState::calibrated).rms_c2c_s < 1e-12 * 1e-3);
            CHECK(ch.at(kind, CalState::measured).rms_c2c_s > 0.0);
        }
}

TEST_CASE("same seed twice gives byte-identical exports") {
    const auto dir = std::filesystem::temp_directory_path() / "phasecal_unit_det";
    std::filesystem::remove_all(dir);
    RunManifest m{options("default", 25, "table1_low"), dir / "a", true};
    ExportedFiles fa, fb;
    run_manifest(m, &fa);
    m.output_dir = dir / "b";
    run_manifest(m, &fb);
    CHECK(slurp(fa.report_json) == slurp(fb.report_json));
    CHECK(slurp(fa.trace_csv) == slurp(fb.trace_csv));
    CHECK(fa.kde_csv.size() == 16);
    CHECK(parse_config(slurp(fa.config)) == run_simulation(m.options).config);
}

TEST_CASE("udp and in-process transports give identical reports") {
    auto o = options("default", 20, "table1_low");
    const auto a = run_simulation(o);
    o.transport = TransportKind::udp;
    const auto b = run_simulation(o);
    CHECK(report_to_json(a.report) == report_to_json(b.report));
    CHECK(a.streams.residual_rad == b.streams.residual_rad);
    CHECK(b.lost_messages == 0);
}
