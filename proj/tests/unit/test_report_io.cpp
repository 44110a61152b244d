#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>

#include "phasecal/report_io.hpp"
#include "phasecal/simulation.hpp"

using namespace phasecal;

namespace {

std::filesystem::path scratch(const std::string& name) {
    auto p = std::filesystem::temp_directory_path() / ("phasecal_unit_" + name);
    std::filesystem::remove_all(p);
    std::filesystem::create_directories(p);
    return p;
}

std::vector<std::string> lines_of(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::vector<std::string> out;
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
}

CalibrationReport without_samples(CalibrationReport r) {
    for (auto& ch : r.chains)
        for (auto& row : ch.cells)
            for (auto& cell : row) cell.samples_s.clear();
    return r;
}

}  // namespace

TEST_CASE("trace CSV: 2 chains x 3 cycles x 2 receivers gives 12 rows") {
    EstimateStreams s(2, 3);
    s.theta_rad[1][1][2] = 0.25;
    s.residual_rad[1][1][2] = -0.5;
    const auto dir = scratch("trace");
    write_trace_csv(s, 3.75e9, dir / "trace.csv");
    const auto lines = lines_of(dir / "trace.csv");
    REQUIRE(lines.size() == 13);
    CHECK(lines[0] == "cycle,chain,receiver,theta_rad,alpha_s,residual_rad");
    CHECK(lines[1].rfind("0,0,local,", 0) == 0);
    CHECK(lines[2].rfind("0,0,ota,", 0) == 0);
    CHECK(lines[12].rfind("2,1,ota,0.25,", 0) == 0);
    CHECK(lines[12].substr(lines[12].rfind(',') + 1) == "-0.5");
}

TEST_CASE("report JSON round-trips through its loader") {
    SimulationOptions o;
    o.config.num_cycles = 30;
    o.config.chains.assign(4, ChainParams{0.2, 0.0, 1.0, 1e-3, {0.01, 60.0, 0.1}});
    o.config.ota_snr_db = std::numeric_limits<double>::infinity();
    const auto r = run_simulation(o);
    const auto dir = scratch("json");
    write_report_json(r.report, dir / "report.json");
    const auto back = load_report_json(dir / "report.json");
    CHECK(back == without_samples(r.report));
    CHECK(report_to_json(back) == report_to_json(r.report));
    CHECK(back.meta.ota_snr_db == std::numeric_limits<double>::infinity());
    CHECK_THROWS(load_report_json(dir / "missing.json"));
    CHECK_THROWS(report_from_json("{\"meta\": {}}"));
}

TEST_CASE("KDE CSV integrates to one") {
    std::vector<double> s;
    for (int i = 0; i < 400; ++i) s.push_back(1e-12 * std::sin(0.37 * i) + 2e-13 * std::cos(1.7 * i));
    const auto dir = scratch("kde");
    write_kde_csv(KernelDensity(s).evaluate_grid(), dir / "kde.csv");
    const auto lines = lines_of(dir / "kde.csv");
    REQUIRE(lines.size() > 512);
    CHECK(lines[0] == "x_s,density");
    std::vector<double> x, y;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto comma = lines[i].find(',');
        x.push_back(std::stod(lines[i].substr(0, comma)));
        y.push_back(std::stod(lines[i].substr(comma + 1)));
    }
    CHECK(std::abs(trapezoid(x, y) - 1.0) < 1e-3);
}

TEST_CASE("table summary names every chain") {
    CalibrationReport r;
    r.meta.num_chains = 2;
    r.chains.resize(2);
    const auto text = format_report_table(r);
    CHECK(text.find("TX1") != std::string::npos);
    CHECK(text.find("TX2") != std::string::npos);
}
