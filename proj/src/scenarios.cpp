#include "phasecal/scenarios.hpp"

#include <cmath>
#include <limits>

#include "phasecal/types.hpp"

namespace phasecal {

SystemConfig without_impairments(SystemConfig c) {
    c.chains.assign(c.num_chains, ChainParams{});
    c.rx_local = RxParams{};
    c.rx_ota = RxParams{};
    c.ota_snr_db = std::numeric_limits<double>::infinity();
    c.channel_gain_mag = 1.0;
    c.channel_gain_phase_rad = 0.0;
    return c;
}

namespace {

constexpr double kDeg = kPi / 180.0;

SystemConfig set_bandwidth(SystemConfig c, double b, double fs) {
    c.bandwidth_hz = b;
    c.sample_rate_hz = fs;
    return c;
}

std::vector<Scenario> build_registry() {
    std::vector<Scenario> r;
    r.push_back({"default", "config as given (Wiener + white phase noise, warm-up and linear drift, AWGN)",
                 "table1_high", [](SystemConfig c) { return c; }});
    r.push_back({"table1-highbw", "default knobs with B = 40 MHz, fs = 80 MHz", "table1_high",
                 [](SystemConfig c) { return set_bandwidth(std::move(c), 40e6, 80e6); }});
    r.push_back({"table1-lowbw", "default knobs with B = 2 MHz, fs = 4 MHz", "table1_low",
                 [](SystemConfig c) { return set_bandwidth(std::move(c), 2e6, 4e6); }});
    r.push_back({"clean", "every impairment, channel phase and noise source disabled", "table1_high",
                 [](SystemConfig c) {
                     c = without_impairments(std::move(c));
                     c.ota_geometry_phase = false;
                     return c;
                 }});
    r.push_back({"constant-phase",
                 "theta_RF = 0.1 (m + 1) rad only; noiseless OTA geometry and OTA frontend phase kept",
                 "table1_high", [](SystemConfig c) {
                     const RxParams ota{c.rx_ota.phi_rf_rad, 0.0, 0.0};
                     c = without_impairments(std::move(c));
                     for (std::size_t m = 0; m < c.num_chains; ++m)
                         c.chains[m].theta_rf_rad = 0.1 * static_cast<double>(m + 1);
                     c.rx_ota = ota;
                     c.ota_geometry_phase = true;
                     return c;
                 }});
    r.push_back({"drift-only", "linear drift of 0.01 (m + 1) rad/s per chain, nothing else", "table1_high",
                 [](SystemConfig c) {
                     std::vector<double> rf;
                     for (const auto& ch : c.chains) rf.push_back(ch.theta_rf_rad);
                     c = without_impairments(std::move(c));
                     for (std::size_t m = 0; m < c.num_chains; ++m) {
                         c.chains[m].theta_rf_rad = rf[m];
                         c.chains[m].drift.slope_rad_per_s = 0.01 * static_cast<double>(m + 1);
                     }
                     return c;
                 }});
    r.push_back({"warmup", "exponential warm-up drift only: -10 deg settle with tau = 60 s", "table1_high",
                 [](SystemConfig c) {
                     std::vector<double> rf;
                     for (const auto& ch : c.chains) rf.push_back(ch.theta_rf_rad);
                     c = without_impairments(std::move(c));
                     for (std::size_t m = 0; m < c.num_chains; ++m) {
                         c.chains[m].theta_rf_rad = rf[m];
                         c.chains[m].drift.amplitude_rad = -10.0 * kDeg;
                         c.chains[m].drift.tau_s = 60.0;
                     }
                     return c;
                 }});
    r.push_back({"duration", "reference-locked Wiener phase noise only, 1 rad^2/s on every chain", "table1_high",
                 [](SystemConfig c) {
                     const double snr = c.ota_snr_db;
                     c = without_impairments(std::move(c));
                     c.ota_snr_db = snr;
                     c.oscillator_mode = OscillatorMode::reference_locked;
                     for (auto& ch : c.chains) ch.wiener_rate_rad2_per_s = 1.0;
                     return c;
                 }});
    r.push_back({"white-noise", "white per-sample TX phase noise (0.01 rad^2) on top of theta_RF, nothing else",
                 "table1_high", [](SystemConfig c) {
                     std::vector<double> rf;
                     for (const auto& ch : c.chains) rf.push_back(ch.theta_rf_rad);
                     c = without_impairments(std::move(c));
                     for (std::size_t m = 0; m < c.num_chains; ++m) {
                         c.chains[m].theta_rf_rad = rf[m];
                         c.chains[m].white_phase_var_rad2 = 0.01;
                     }
                     return c;
                 }});
    r.push_back({"ota-vs-local", "weak Wiener + white TX phase noise seen by both receivers, OTA SNR 30 dB",
                 "table1_high", [](SystemConfig c) {
                     c = without_impairments(std::move(c));
                     c.ota_snr_db = 30.0;
                     for (auto& ch : c.chains) {
                         ch.wiener_rate_rad2_per_s = 0.01;
                         ch.white_phase_var_rad2 = 1e-4;
                     }
                     return c;
                 }});
    return r;
}

}  // namespace

const std::vector<Scenario>& scenario_registry() {
    static const std::vector<Scenario> registry = build_registry();
    return registry;
}

const Scenario& find_scenario(std::string_view name) {
    for (const auto& s : scenario_registry())
        if (s.name == name) return s;
    std::string known;
    for (const auto& s : scenario_registry()) known += " " + s.name;
    throw ConfigError("unknown scenario '" + std::string(name) + "' (known:" + known + ")");
}

}  // namespace phasecal
