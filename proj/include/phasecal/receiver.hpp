#pragma once

#include <cstddef>
#include <random>
#include <span>
#include <vector>

#include "phasecal/config.hpp"
#include "phasecal/types.hpp"
#include "phasecal/waveform.hpp"

namespace phasecal {

/// Receiver frontend: constant phase, synthesizer offset and white oscillator phase.
class RxChainState {
public:
    RxChainState(const RxParams& params, std::mt19937_64 rng);

    const RxParams& params() const { return params_; }
    /// One white oscillator phase draw per sample (zeros when the variance is 0).
    std::vector<double> oscillator_phase(std::size_t n_samples);

private:
    RxParams params_;
    std::mt19937_64 rng_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

/// Rotates sample n by -(2*pi*cfo*n/fs + phi_OS[n] + phi_RF).
ComplexSignal downconvert(const ComplexSignal& signal, RxChainState& rx);

/// The N chirp-bearing samples of slot m (guards dropped).
ComplexSignal extract_slot(const ComplexSignal& frame, std::size_t m, const FrameSchedule& schedule);

/// slot[n] * conj(reference[n]); the per-chain system function.
ComplexSignal dechirp(const ComplexSignal& slot, const ComplexSignal& reference);

/// Adjusts successive differences by multiples of 2*pi so that |diff| <= pi.
std::vector<double> unwrap_phases(std::span<const double> wrapped);

/// Time average of arg(h) over the slot, wrapped to (-pi, pi].
/// unwrap_mean averages the unwrapped per-sample arguments; circular_mean takes arg(sum h).
double estimate_phase(const ComplexSignal& h, EstimatorKind kind = EstimatorKind::unwrap_mean);

struct ReceiverSetup {
    const FrameSchedule* schedule = nullptr;
    const ComplexSignal* reference_chirp = nullptr;
    double carrier_hz = 0.0;
    ReceiverKind kind = ReceiverKind::local;
    EstimatorKind estimator = EstimatorKind::unwrap_mean;
};

/// downconvert -> extract_slot -> dechirp -> estimate_phase, for every chain.
std::vector<PhaseEstimate> run_receiver(const ComplexSignal& received_frame, RxChainState& rx,
                                        const ReceiverSetup& setup, std::size_t cycle_index);

}  // namespace phasecal
