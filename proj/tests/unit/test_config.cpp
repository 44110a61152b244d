#include <doctest.h>

#include <cmath>
#include <functional>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>

#include "phasecal/config_io.hpp"
#include "phasecal/presets.hpp"
#include "phasecal/types.hpp"

using namespace phasecal;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string error_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const ConfigError& e) {
        return e.what();
    }
    return {};
}

}  // namespace

TEST_CASE("default SystemConfig carries the measurement-campaign values and validates") {
    const SystemConfig c = validate(SystemConfig{});
    CHECK(c.carrier_freq_hz == 3.75e9);
    CHECK(c.bandwidth_hz == 40e6);
    CHECK(c.sample_rate_hz == 80e6);
    CHECK(c.num_chains == 4);
    CHECK(c.num_chirp_samples == 1500);
    CHECK(c.num_cycles == 10000);
    CHECK(c.cycle_interval_s == 50e-3);
    CHECK(c.rx_distance_m == 2.0);
    CHECK(c.rx_angle_rad == 0.0);
    CHECK(c.chains.size() == 4);
    CHECK(c.chirp_duration_s() == doctest::Approx(18.75e-6).epsilon(1e-12));
    CHECK(c.spacing_m() == doctest::Approx(kSpeedOfLight / (2 * 3.75e9)));
}

TEST_CASE("validate rejects boundary violations with descriptive messages") {
    SystemConfig c;
    c.bandwidth_hz = 0;
    CHECK(error_of([&] { validate(c); }).find("bandwidth must be positive") != std::string::npos);

    c = SystemConfig{};
    c.bandwidth_hz = 100e6;
    CHECK(error_of([&] { validate(c); }).find("B <= f_s required") != std::string::npos);

    c = SystemConfig{};
    c.cycle_interval_s = 1e-6;  // shorter than the 10000-sample frame
    CHECK_THROWS_AS(validate(c), ConfigError);

    c = SystemConfig{};
    c.num_chains = 300;
    CHECK_THROWS_AS(validate(c), ConfigError);

    c = SystemConfig{};
    c.rx_angle_rad = 2.0;
    CHECK_THROWS_AS(validate(c), ConfigError);

    c = SystemConfig{};
    c.chains.resize(3);
    CHECK_THROWS_AS(validate(c), ConfigError);

    c = SystemConfig{};
    c.rx_local.cfo_hz = 10.0;
    CHECK_THROWS_AS(validate(c), ConfigError);

    c = SystemConfig{};
    c.chains.resize(4);
    c.chains[1].wiener_rate_rad2_per_s = -1;
    CHECK(error_of([&] { validate(c); }).find("chain 1") != std::string::npos);
}

TEST_CASE("bundled high-bandwidth config") {
    const auto c = load_config_file(PHASECAL_SOURCE_DIR "/configs/table1_high.cfg");
    CHECK(c.carrier_freq_hz == 3.75e9);
    CHECK(c.bandwidth_hz == 40e6);
    CHECK(c.sample_rate_hz == 80e6);
    CHECK(c.num_chains == 4);
    CHECK(c.num_chirp_samples == 1500);
    CHECK(c.guard_samples == 500);
    CHECK(c.num_cycles == 10000);
    CHECK(c.cycle_interval_s == 0.05);
}

TEST_CASE("bundled low-bandwidth config differs only in bandwidth and sample rate") {
    auto lo = load_config_file(PHASECAL_SOURCE_DIR "/configs/table1_low.cfg");
    auto hi = load_config_file(PHASECAL_SOURCE_DIR "/configs/table1_high.cfg");
    CHECK(lo.bandwidth_hz == 2e6);
    CHECK(lo.sample_rate_hz == 4e6);
    CHECK(lo.chirp_duration_s() == doctest::Approx(375e-6).epsilon(1e-12));
    lo.bandwidth_hz = hi.bandwidth_hz;
    lo.sample_rate_hz = hi.sample_rate_hz;
    CHECK(lo == hi);
}

TEST_CASE("embedded presets are the checked-in config files") {
    CHECK(preset_config_text("table1_high") == read_file(PHASECAL_SOURCE_DIR "/configs/table1_high.cfg"));
    CHECK(preset_config_text("table1_low") == read_file(PHASECAL_SOURCE_DIR "/configs/table1_low.cfg"));
    CHECK_THROWS_AS(preset_config_text("nope"), ConfigError);
}

TEST_CASE("empty config lists every required key") {
    const std::string msg = error_of([] { parse_config(""); });
    CHECK(msg.find("missing required keys") != std::string::npos);
    for (const auto& key : required_config_keys()) CHECK(msg.find(key) != std::string::npos);
}

TEST_CASE("parse errors: unknown key, duplicate key, type mismatch, stray section") {
    const std::string base(preset_config_text("table1_high"));
    CHECK(error_of([&] { parse_config(base + "\nbogus_key = 1\n"); }).find("bogus_key") != std::string::npos);
    CHECK_THROWS_AS(parse_config("carrier_freq_hz = 1e9\ncarrier_freq_hz = 2e9\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("carrier_freq_hz = fast\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("num_chains = 2.5\n"), ConfigError);
    CHECK_THROWS_AS(parse_config(base + "\n[chain.9]\ntheta_rf_rad = 0\n"), ConfigError);
    CHECK_THROWS_AS(parse_config(base + "\n[weird]\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("this line has no equals sign\n"), ConfigError);
    CHECK_THROWS_AS(load_config_file("/definitely/not/here.cfg"), ConfigError);
}

TEST_CASE("canonical text round-trips and hashes stably") {
    SystemConfig c = preset_config("table1_low");
    c.element_spacing_m = 0.037;
    c.ota_snr_db = std::numeric_limits<double>::infinity();
    c.estimator = EstimatorKind::circular_mean;
    c.delay_model = DelayModel::sample_shift;
    c.chains[2].cfo_hz = 12.5;
    c.rx_ota.osc_white_var_rad2 = 1e-5;
    const SystemConfig back = parse_config(to_config_text(c));
    CHECK(back == c);
    CHECK(config_hash(back) == config_hash(c));
    c.chains[2].cfo_hz = 12.6;
    CHECK(config_hash(back) != config_hash(c));
}

TEST_CASE("format_double is shortest round-trip") {
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(3.75e9) == "3.75e+09");
    CHECK(format_double(std::numeric_limits<double>::infinity()) == "inf");
    const double x = 0.1 + 0.2;
    CHECK(std::stod(format_double(x)) == x);
}
