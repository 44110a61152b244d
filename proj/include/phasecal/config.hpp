#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace phasecal {

/// Raised for any configuration problem; the CLI maps it to exit code 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Slow phase drift of a transmit frontend:
///   amplitude * (1 - exp(-t / tau)) + slope * t
/// The exponential term models the warm-up settle; the slope term is the
/// linear (tau -> infinity) mode.
struct DriftParams {
    double amplitude_rad = 0.0;
    double tau_s = 60.0;
    double slope_rad_per_s = 0.0;

    bool operator==(const DriftParams&) const = default;
};

struct ChainParams {
    double theta_rf_rad = 0.0;
    double cfo_hz = 0.0;
    double wiener_rate_rad2_per_s = 0.0;
    double white_phase_var_rad2 = 0.0;
    DriftParams drift;

    bool operator==(const ChainParams&) const = default;
};

struct RxParams {
    double phi_rf_rad = 0.0;
    double cfo_hz = 0.0;
    double osc_white_var_rad2 = 0.0;

    bool operator==(const RxParams&) const = default;
};

/// How the oscillator phase behaves between frames.
///  reference_locked: the Wiener wander restarts at every cycle trigger, since the
///                    shared 10 MHz reference pins the long-term phase.
///  free_running:     the Wiener state keeps accumulating across the idle gap.
enum class OscillatorMode { reference_locked, free_running };

enum class EstimatorKind { unwrap_mean, circular_mean };

/// carrier_phase: delay acts only as a carrier rotation (narrowband).
/// sample_shift: additionally delays the baseband envelope (linear interpolation).
enum class DelayModel { carrier_phase, sample_shift };

std::string_view to_string(OscillatorMode m);
std::string_view to_string(EstimatorKind k);
std::string_view to_string(DelayModel d);
OscillatorMode oscillator_mode_from_string(std::string_view s);
EstimatorKind estimator_kind_from_string(std::string_view s);
DelayModel delay_model_from_string(std::string_view s);

struct SystemConfig {
    double carrier_freq_hz = 3.75e9;
    double bandwidth_hz = 40e6;
    double sample_rate_hz = 80e6;
    std::size_t num_chains = 4;
    std::size_t num_chirp_samples = 1500;
    std::size_t guard_samples = 500;
    std::size_t num_cycles = 10000;
    double cycle_interval_s = 50e-3;
    std::optional<double> element_spacing_m;  // half wavelength when unset
    double rx_distance_m = 2.0;
    double rx_angle_rad = 0.0;
    double tx_power_dbm = 0.0;  // report metadata only
    double ota_snr_db = 30.0;   // +inf disables OTA noise
    std::uint64_t rng_seed = 0;
    std::size_t smoothing_window = 10;

    OscillatorMode oscillator_mode = OscillatorMode::reference_locked;
    EstimatorKind estimator = EstimatorKind::unwrap_mean;
    DelayModel delay_model = DelayModel::carrier_phase;
    double channel_gain_mag = 1.0;
    double channel_gain_phase_rad = 0.0;
    bool ota_geometry_phase = true;

    std::vector<ChainParams> chains;  // size num_chains after validation
    RxParams rx_local;
    RxParams rx_ota;

    double chirp_duration_s() const {
        return static_cast<double>(num_chirp_samples) / sample_rate_hz;
    }
    double spacing_m() const;
    std::size_t slot_length_samples() const { return 2 * guard_samples + num_chirp_samples; }
    std::size_t frame_length_samples() const { return num_chains * slot_length_samples(); }
    double frame_duration_s() const {
        return static_cast<double>(frame_length_samples()) / sample_rate_hz;
    }
    /// Complex AWGN variance per sample for unit signal power.
    double ota_noise_var() const;

    bool operator==(const SystemConfig&) const = default;
};

/// Checks every invariant and fills derived defaults (spacing, per-chain blocks).
/// Throws ConfigError naming the first violated invariant.
SystemConfig validate(SystemConfig config);

}  // namespace phasecal
