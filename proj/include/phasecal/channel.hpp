#pragma once

#include <cstddef>
#include <random>
#include <span>
#include <vector>

#include "phasecal/config.hpp"
#include "phasecal/types.hpp"

namespace phasecal {

/// Single LOS tap with a common gain and path delay for all elements.
struct OtaChannelParams {
    cplx gain{1.0, 0.0};
    double path_delay_s = 0.0;
    std::vector<double> element_delays_s;  // tau_p,m
    double noise_var = 0.0;                // complex AWGN variance per sample
    DelayModel delay_model = DelayModel::carrier_phase;
};

/// tau_p,m = m * (d / c) * sin(phi)
double ula_delay(std::size_t m, double spacing_m, double angle_rad);

/// Geometry-derived parameters for a validated config.
OtaChannelParams make_ota_params(const SystemConfig& config);

/// Carrier phase -2*pi*f_c*tau, reduced modulo 2*pi.
double carrier_delay_phase(double carrier_hz, double delay_s);

/// Wired combiner: elementwise sum of the chain signals.
ComplexSignal propagate_local(std::span<const ComplexSignal> frames);

/// sum_m gain * exp(-j 2 pi f_c (tau_p,m + tau_ch)) * s_m + v, v ~ CN(0, noise_var).
ComplexSignal propagate_ota(std::span<const ComplexSignal> frames, const OtaChannelParams& params,
                            double carrier_hz, std::mt19937_64& rng);

/// Fractional delay by linear interpolation (sample_shift delay model).
std::vector<cplx> fractional_delay(std::span<const cplx> x, double delay_samples);

}  // namespace phasecal
