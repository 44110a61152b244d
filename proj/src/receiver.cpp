#include "phasecal/receiver.hpp"

#include <cmath>
#include <stdexcept>

#include "phasecal/kernels.hpp"

namespace phasecal {

RxChainState::RxChainState(const RxParams& params, std::mt19937_64 rng) : params_(params), rng_(std::move(rng)) {
    if (params.osc_white_var_rad2 < 0) throw std::invalid_argument("osc_white_var_rad2 must be >= 0");
}

std::vector<double> RxChainState::oscillator_phase(std::size_t n_samples) {
    std::vector<double> phase(n_samples, 0.0);
    const double sd = std::sqrt(params_.osc_white_var_rad2);
    if (sd > 0.0)
        for (auto& p : phase) p = sd * normal_(rng_);
    return phase;
}

ComplexSignal downconvert(const ComplexSignal& signal, RxChainState& rx) {
    ComplexSignal out = signal;
    const RxParams& p = rx.params();
    if (p.cfo_hz == 0.0 && p.osc_white_var_rad2 == 0.0) {
        if (p.phi_rf_rad != 0.0) kernels::rotate_constant(out.samples, -p.phi_rf_rad);
        return out;
    }
    std::vector<double> phase = rx.oscillator_phase(out.size());
    const double fs = out.sample_rate_hz;
    for (std::size_t n = 0; n < phase.size(); ++n) {
        double cycles = p.cfo_hz * static_cast<double>(n) / fs;
        cycles -= std::floor(cycles);
        phase[n] = -(kTwoPi * cycles + phase[n] + p.phi_rf_rad);
    }
    kernels::rotate(out.samples, phase);
    return out;
}

ComplexSignal extract_slot(const ComplexSignal& frame, std::size_t m, const FrameSchedule& schedule) {
    if (m >= schedule.num_chains())
        throw std::out_of_range("extract_slot: slot index " + std::to_string(m) + " out of range");
    if (frame.size() < schedule.frame_length_samples)
        throw ShapeError("extract_slot: frame shorter than the schedule");
    const std::size_t begin = schedule.chirp_begin(m);
    const auto first = frame.samples.begin() + static_cast<std::ptrdiff_t>(begin);
    return ComplexSignal(std::vector<cplx>(first, first + static_cast<std::ptrdiff_t>(schedule.chirp_samples)),
                         frame.sample_rate_hz,
                         frame.start_time_s + static_cast<double>(begin) / frame.sample_rate_hz);
}

ComplexSignal dechirp(const ComplexSignal& slot, const ComplexSignal& reference) {
    if (slot.size() != reference.size()) throw ShapeError("dechirp: slot and reference lengths differ");
    ComplexSignal h(std::vector<cplx>(slot.size()), slot.sample_rate_hz, slot.start_time_s);
    kernels::dechirp(slot.samples, reference.samples, h.samples);
    return h;
}

std::vector<double> unwrap_phases(std::span<const double> wrapped) {
    std::vector<double> out(wrapped.begin(), wrapped.end());
    for (std::size_t n = 1; n < out.size(); ++n)
        out[n] = out[n - 1] + wrap_phase(wrapped[n] - wrapped[n - 1]);
    return out;
}

double estimate_phase(const ComplexSignal& h, EstimatorKind kind) {
    if (h.empty()) throw ShapeError("estimate_phase: empty system function");
    const double raw = kind == EstimatorKind::unwrap_mean ? kernels::unwrapped_mean_arg(h.samples)
                                                          : kernels::circular_mean_arg(h.samples);
    return wrap_phase(raw);
}

std::vector<PhaseEstimate> run_receiver(const ComplexSignal& received_frame, RxChainState& rx,
                                        const ReceiverSetup& setup, std::size_t cycle_index) {
    if (setup.schedule == nullptr || setup.reference_chirp == nullptr)
        throw std::invalid_argument("run_receiver: schedule and reference chirp are required");
    const ComplexSignal baseband = downconvert(received_frame, rx);
    std::vector<PhaseEstimate> estimates;
    estimates.reserve(setup.schedule->num_chains());
    for (std::size_t m = 0; m < setup.schedule->num_chains(); ++m) {
        const ComplexSignal h = dechirp(extract_slot(baseband, m, *setup.schedule), *setup.reference_chirp);
        estimates.push_back(PhaseEstimate::make(m, cycle_index, estimate_phase(h, setup.estimator),
                                                setup.carrier_hz, setup.kind));
    }
    return estimates;
}

}  // namespace phasecal
