#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "phasecal/config.hpp"
#include "phasecal/types.hpp"
#include "phasecal/waveform.hpp"

namespace phasecal {

/// A(1 - exp(-t / tau_w)).
double drift_phase(double t_s, double amplitude_rad, double tau_s);

/// Exponential settle plus the linear slope term.
double drift_phase(double t_s, const DriftParams& drift);

/// Per-chain transmit impairments and the evolving oscillator phase.
/// Each chain owns its RNG substream, so chains can be advanced on separate
/// threads without sharing state.
class ChainImpairmentState {
public:
    ChainImpairmentState(std::size_t chain_index, const ChainParams& params, std::mt19937_64 rng,
                         OscillatorMode mode = OscillatorMode::free_running);

    std::size_t chain_index() const { return chain_; }
    const ChainParams& params() const { return params_; }
    OscillatorMode mode() const { return mode_; }
    double current_osc_phase() const { return osc_phase_; }

    /// Adds a N(0, wiener_rate * dt) increment to the oscillator phase.
    void advance_oscillator(double dt_s);

    /// Sample-wise oscillator phase: cumulative Wiener increments of variance
    /// wiener_rate/fs plus a white term of variance white_phase_var per sample.
    /// Leaves the state advanced by n_samples/fs.
    std::vector<double> oscillator_trajectory(std::size_t n_samples, double fs_hz);

    /// Cycle trigger. In reference_locked mode the Wiener wander restarts from
    /// the reference phase (zero); free_running leaves the state untouched.
    void trigger();

private:
    std::size_t chain_;
    ChainParams params_;
    std::mt19937_64 rng_;
    std::normal_distribution<double> normal_{0.0, 1.0};
    OscillatorMode mode_;
    double osc_phase_ = 0.0;
};

/// Rotates chain m's slot by 2*pi*cfo*t + theta_OS(t) + theta_RF + drift(t), with
/// t = cycle_start + n/fs. Samples outside the chain's own slot are zero in a
/// TDMA frame and are passed through untouched. On return the oscillator has
/// been advanced through the frame and the idle gap up to the next trigger.
ComplexSignal apply_tx_impairments(const ComplexSignal& frame, ChainImpairmentState& state,
                                   const FrameSchedule& schedule, double cycle_start_time_s,
                                   double cycle_interval_s);

}  // namespace phasecal
