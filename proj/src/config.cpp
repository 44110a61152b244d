#include "phasecal/config.hpp"

#include <cmath>

#include "phasecal/types.hpp"

namespace phasecal {

std::string_view to_string(OscillatorMode m) {
    return m == OscillatorMode::reference_locked ? "reference_locked" : "free_running";
}
std::string_view to_string(EstimatorKind k) {
    return k == EstimatorKind::unwrap_mean ? "unwrap_mean" : "circular_mean";
}
std::string_view to_string(DelayModel d) {
    return d == DelayModel::carrier_phase ? "carrier_phase" : "sample_shift";
}

OscillatorMode oscillator_mode_from_string(std::string_view s) {
    if (s == "reference_locked") return OscillatorMode::reference_locked;
    if (s == "free_running") return OscillatorMode::free_running;
    throw ConfigError("oscillator_mode must be reference_locked or free_running");
}
EstimatorKind estimator_kind_from_string(std::string_view s) {
    if (s == "unwrap_mean") return EstimatorKind::unwrap_mean;
    if (s == "circular_mean") return EstimatorKind::circular_mean;
    throw ConfigError("estimator must be unwrap_mean or circular_mean");
}
DelayModel delay_model_from_string(std::string_view s) {
    if (s == "carrier_phase") return DelayModel::carrier_phase;
    if (s == "sample_shift") return DelayModel::sample_shift;
    throw ConfigError("delay_model must be carrier_phase or sample_shift");
}

double SystemConfig::spacing_m() const {
    return element_spacing_m.value_or(kSpeedOfLight / (2.0 * carrier_freq_hz));
}

double SystemConfig::ota_noise_var() const {
    if (std::isinf(ota_snr_db) && ota_snr_db > 0) return 0.0;
    return std::pow(10.0, -ota_snr_db / 10.0);
}

namespace {

void require(bool ok, const std::string& message) {
    if (!ok) throw ConfigError(message);
}

bool finite(double v) { return std::isfinite(v); }

void check_chain(const ChainParams& c, std::size_t m) {
    const std::string tag = "chain " + std::to_string(m) + ": ";
    require(finite(c.theta_rf_rad), tag + "theta_rf_rad must be finite");
    require(finite(c.cfo_hz), tag + "cfo_hz must be finite");
    require(finite(c.wiener_rate_rad2_per_s) && c.wiener_rate_rad2_per_s >= 0,
            tag + "wiener_rate_rad2_per_s must be >= 0");
    require(finite(c.white_phase_var_rad2) && c.white_phase_var_rad2 >= 0,
            tag + "white_phase_var_rad2 must be >= 0");
    require(finite(c.drift.tau_s) && c.drift.tau_s > 0, tag + "drift_tau_s must be positive");
    require(finite(c.drift.amplitude_rad), tag + "drift_amplitude_rad must be finite");
    require(finite(c.drift.slope_rad_per_s), tag + "drift_slope_rad_per_s must be finite");
}

void check_rx(const RxParams& r, const std::string& name) {
    require(finite(r.phi_rf_rad), name + ": phi_rf_rad must be finite");
    require(finite(r.cfo_hz), name + ": cfo_hz must be finite");
    require(finite(r.osc_white_var_rad2) && r.osc_white_var_rad2 >= 0,
            name + ": osc_white_var_rad2 must be >= 0");
}

}  // namespace

SystemConfig validate(SystemConfig c) {
    require(finite(c.carrier_freq_hz) && c.carrier_freq_hz > 0, "carrier frequency must be positive");
    require(finite(c.sample_rate_hz) && c.sample_rate_hz > 0, "sample rate must be positive");
    require(finite(c.bandwidth_hz) && c.bandwidth_hz > 0, "bandwidth must be positive");
    require(c.bandwidth_hz <= c.sample_rate_hz, "B <= f_s required (bandwidth exceeds sample rate)");
    require(c.num_chirp_samples >= 2, "num_chirp_samples must be >= 2");
    require(c.num_chains >= 1, "num_chains must be >= 1");
    require(c.num_chains <= 256, "num_chains must fit the 8-bit feedback chain index");
    require(c.num_cycles >= 2, "num_cycles must be >= 2");
    require(finite(c.cycle_interval_s) && c.cycle_interval_s > 0, "cycle_interval_s must be positive");
    require(c.cycle_interval_s >= c.frame_duration_s(),
            "cycle_interval_s must be at least the frame duration");
    if (c.element_spacing_m)
        require(finite(*c.element_spacing_m) && *c.element_spacing_m > 0,
                "element_spacing_m must be positive");
    require(finite(c.rx_distance_m) && c.rx_distance_m > 0, "rx_distance_m must be positive");
    require(finite(c.rx_angle_rad) && std::abs(c.rx_angle_rad) <= kPi / 2,
            "|rx_angle_rad| <= pi/2 required");
    require(finite(c.tx_power_dbm), "tx_power_dbm must be finite");
    require(!std::isnan(c.ota_snr_db) && c.ota_snr_db != -INFINITY, "ota_snr_db must be a number or inf");
    require(c.smoothing_window >= 1, "smoothing_window must be >= 1");
    require(finite(c.channel_gain_mag) && c.channel_gain_mag >= 0, "channel_gain_mag must be >= 0");
    require(finite(c.channel_gain_phase_rad), "channel_gain_phase_rad must be finite");

    if (c.chains.empty()) c.chains.resize(c.num_chains);
    require(c.chains.size() == c.num_chains, "per-chain parameter blocks must match num_chains");
    for (std::size_t m = 0; m < c.chains.size(); ++m) check_chain(c.chains[m], m);

    check_rx(c.rx_local, "rx.local");
    check_rx(c.rx_ota, "rx.ota");
    require(c.rx_local.cfo_hz == 0.0, "rx.local: cfo_hz must be 0 (shared frequency reference)");
    return c;
}

}  // namespace phasecal
