#include "phasecal/impairments.hpp"

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>

#include "phasecal/kernels.hpp"

namespace phasecal {

double drift_phase(double t_s, double amplitude_rad, double tau_s) {
    if (!(tau_s > 0)) throw std::invalid_argument("drift_phase: tau must be positive");
    return -amplitude_rad * std::expm1(-t_s / tau_s);
}

double drift_phase(double t_s, const DriftParams& drift) {
    return drift_phase(t_s, drift.amplitude_rad, drift.tau_s) + drift.slope_rad_per_s * t_s;
}

ChainImpairmentState::ChainImpairmentState(std::size_t chain_index, const ChainParams& params,
                                           std::mt19937_64 rng, OscillatorMode mode)
    : chain_(chain_index), params_(params), rng_(std::move(rng)), mode_(mode) {
    if (params.wiener_rate_rad2_per_s < 0 || params.white_phase_var_rad2 < 0)
        throw std::invalid_argument("phase noise variances must be >= 0");
    if (!(params.drift.tau_s > 0)) throw std::invalid_argument("drift_tau_s must be positive");
}

void ChainImpairmentState::advance_oscillator(double dt_s) {
    if (dt_s < 0) throw std::invalid_argument("advance_oscillator: dt must be >= 0");
    const double var = params_.wiener_rate_rad2_per_s * dt_s;
    if (var == 0.0) return;
    osc_phase_ += std::sqrt(var) * normal_(rng_);
}

std::vector<double> ChainImpairmentState::oscillator_trajectory(std::size_t n_samples, double fs_hz) {
    if (n_samples == 0) throw std::invalid_argument("oscillator_trajectory: n_samples must be >= 1");
    std::vector<double> path(n_samples, osc_phase_);
    const double step_sd = std::sqrt(params_.wiener_rate_rad2_per_s / fs_hz);
    const double white_sd = std::sqrt(params_.white_phase_var_rad2);

    if (step_sd > 0.0) {
        double phase = osc_phase_;
        for (auto& p : path) {
            phase += step_sd * normal_(rng_);
            p = phase;
        }
        osc_phase_ = phase;
    }
    if (white_sd > 0.0)
        for (auto& p : path) p += white_sd * normal_(rng_);
    return path;
}

void ChainImpairmentState::trigger() {
    if (mode_ == OscillatorMode::reference_locked) osc_phase_ = 0.0;
}

ComplexSignal apply_tx_impairments(const ComplexSignal& frame, ChainImpairmentState& state,
                                   const FrameSchedule& schedule, double cycle_start_time_s,
                                   double cycle_interval_s) {
    const std::size_t m = state.chain_index();
    if (m >= schedule.num_chains()) throw std::out_of_range("apply_tx_impairments: chain outside schedule");
    if (frame.size() < schedule.frame_length_samples)
        throw ShapeError("apply_tx_impairments: frame shorter than the schedule");

    const double fs = frame.sample_rate_hz;
    const std::size_t begin = schedule.chirp_begin(m);
    const std::size_t n = schedule.chirp_samples;
    const ChainParams& p = state.params();

    state.trigger();
    state.advance_oscillator(static_cast<double>(begin) / fs);
    const std::vector<double> osc = state.oscillator_trajectory(n, fs);

    std::vector<double> phase(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double t = cycle_start_time_s + static_cast<double>(begin + k) / fs;
        double cycles = p.cfo_hz * t;
        cycles -= std::floor(cycles);
        phase[k] = kTwoPi * cycles + osc[k] + p.theta_rf_rad + drift_phase(t, p.drift);
    }

    ComplexSignal out = frame;
    kernels::rotate(std::span<cplx>(out.samples).subspan(begin, n), phase);

    const double elapsed = static_cast<double>(begin + n) / fs;
    state.advance_oscillator(std::max(0.0, cycle_interval_s - elapsed));
    return out;
}

}  // namespace phasecal
