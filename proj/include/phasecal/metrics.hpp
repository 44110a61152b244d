#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "phasecal/config.hpp"
#include "phasecal/types.hpp"

namespace phasecal {

/// alpha = theta / (2 pi f_c)
double phase_to_jitter(double theta_rad, double carrier_hz);

/// RMS cycle-to-cycle jitter: sqrt( sum_l (a[l+1] - a[l])^2 / (L - 1) ).
/// Throws std::invalid_argument for fewer than two samples.
double rms_c2c_jitter(std::span<const double> alpha);

/// |sum_m exp(j r_m)| / M
double coherence_factor(std::span<const double> residual_phases_rad);

double sample_mean(std::span<const double> x);
/// Unbiased (n - 1) standard deviation.
double sample_stddev(std::span<const double> x);
/// Population skewness g1 (0 for a constant sequence).
double skewness(std::span<const double> x);
/// Population excess kurtosis g2 (0 for a constant sequence).
double excess_kurtosis(std::span<const double> x);

/// Silverman's rule of thumb, 1.06 * sigma * n^(-1/5).
double silverman_bandwidth(std::span<const double> samples);

struct KdeGrid {
    std::vector<double> x;
    std::vector<double> density;
};

/// Gaussian-kernel density estimate f(x) = 1/(n h) sum K((x - x_i)/h).
class KernelDensity {
public:
    /// Requires at least two samples. Without an explicit bandwidth Silverman's
    /// rule is used, which fails with "zero bandwidth" for all-equal samples.
    explicit KernelDensity(std::vector<double> samples, std::optional<double> bandwidth = std::nullopt);

    double bandwidth() const { return bandwidth_; }
    std::span<const double> samples() const { return samples_; }
    double operator()(double x) const;

    /// Evaluates on a uniform grid covering [min - pad*h, max + pad*h]. With
    /// points == 0 the spacing is at most h/4 (and at least 512 points).
    KdeGrid evaluate_grid(double pad_bandwidths = 8.0, std::size_t points = 0) const;

private:
    std::vector<double> samples_;
    double bandwidth_;
};

/// Trapezoid integral of a sampled function.
double trapezoid(std::span<const double> x, std::span<const double> y);

// ---------------------------------------------------------------- report

enum class CalState : std::uint8_t { measured = 0, calibrated = 1 };
std::string_view to_string(CalState s);

struct JitterCell {
    double rms_c2c_s = 0.0;
    double mean_phase_rad = 0.0;
    double skewness = 0.0;
    double excess_kurtosis = 0.0;
    std::vector<double> samples_s;  // length L

    bool operator==(const JitterCell&) const = default;
};

struct ChainReport {
    // cells[receiver][state]
    std::array<std::array<JitterCell, 2>, 2> cells;

    JitterCell& at(ReceiverKind r, CalState s) { return cells[static_cast<int>(r)][static_cast<int>(s)]; }
    const JitterCell& at(ReceiverKind r, CalState s) const {
        return cells[static_cast<int>(r)][static_cast<int>(s)];
    }
    bool operator==(const ChainReport&) const = default;
};

struct ReportMetadata {
    std::string scenario;
    std::uint64_t seed = 0;
    std::uint64_t config_hash = 0;
    double carrier_freq_hz = 0.0;
    double bandwidth_hz = 0.0;
    double sample_rate_hz = 0.0;
    double tx_power_dbm = 0.0;
    double ota_snr_db = 0.0;
    std::size_t num_chains = 0;
    std::size_t num_cycles = 0;
    std::size_t smoothing_window = 0;
    /// Calibrated statistics use cycles [settle_cycles, L), once the smoothing
    /// window is full.
    std::size_t settle_cycles = 0;

    bool operator==(const ReportMetadata&) const = default;
};

struct CalibrationReport {
    ReportMetadata meta;
    std::vector<ChainReport> chains;
    /// Mean coherence factor over cycles, per receiver and state (measured uses raw estimates).
    std::array<std::array<double, 2>, 2> coherence{};

    bool operator==(const CalibrationReport&) const = default;
};

/// Raw per-cycle phases collected by a run, indexed [receiver][chain][cycle].
struct EstimateStreams {
    std::array<std::vector<std::vector<double>>, 2> theta_rad;
    std::array<std::vector<std::vector<double>>, 2> residual_rad;

    EstimateStreams() = default;
    EstimateStreams(std::size_t num_chains, std::size_t num_cycles);
};

/// Number of leading cycles excluded from calibrated statistics.
std::size_t settle_cycles(std::size_t window, std::size_t num_cycles);

/// Measured cells use the cycle-unwrapped estimate track; calibrated cells use
/// the wrapped residuals over the settled cycles. Throws std::invalid_argument
/// for incomplete streams.
CalibrationReport build_report(const EstimateStreams& streams, const SystemConfig& config,
                               const std::string& scenario, std::uint64_t seed);

}  // namespace phasecal
