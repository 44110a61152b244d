#include "phasecal/channel.hpp"

#include <cmath>

#include "phasecal/kernels.hpp"

namespace phasecal {

double ula_delay(std::size_t m, double spacing_m, double angle_rad) {
    return static_cast<double>(m) * (spacing_m / kSpeedOfLight) * std::sin(angle_rad);
}

OtaChannelParams make_ota_params(const SystemConfig& config) {
    OtaChannelParams p;
    p.gain = std::polar(config.channel_gain_mag, config.channel_gain_phase_rad);
    p.noise_var = config.ota_noise_var();
    p.delay_model = config.delay_model;
    p.element_delays_s.assign(config.num_chains, 0.0);
    if (config.ota_geometry_phase) {
        p.path_delay_s = config.rx_distance_m / kSpeedOfLight;
        for (std::size_t m = 0; m < config.num_chains; ++m)
            p.element_delays_s[m] = ula_delay(m, config.spacing_m(), config.rx_angle_rad);
    }
    return p;
}

double carrier_delay_phase(double carrier_hz, double delay_s) {
    double cycles = carrier_hz * delay_s;
    cycles -= std::floor(cycles);
    return -kTwoPi * cycles;
}

namespace {

void check_frames(std::span<const ComplexSignal> frames) {
    if (frames.empty()) throw ShapeError("propagate: no chain signals");
    for (const auto& f : frames) {
        if (f.size() != frames.front().size()) throw ShapeError("propagate: chain signal length mismatch");
        if (f.sample_rate_hz != frames.front().sample_rate_hz)
            throw ShapeError("propagate: chain sample rate mismatch");
    }
}

}  // namespace

ComplexSignal propagate_local(std::span<const ComplexSignal> frames) {
    check_frames(frames);
    ComplexSignal out(std::vector<cplx>(frames.front().size(), cplx{0.0, 0.0}), frames.front().sample_rate_hz,
                      frames.front().start_time_s);
    for (const auto& f : frames) kernels::accumulate(out.samples, f.samples);
    return out;
}

std::vector<cplx> fractional_delay(std::span<const cplx> x, double delay_samples) {
    std::vector<cplx> y(x.size(), cplx{0.0, 0.0});
    const auto whole = static_cast<std::ptrdiff_t>(std::floor(delay_samples));
    const double frac = delay_samples - static_cast<double>(whole);
    const auto n = static_cast<std::ptrdiff_t>(x.size());
    auto at = [&](std::ptrdiff_t i) { return (i >= 0 && i < n) ? x[static_cast<std::size_t>(i)] : cplx{}; };
    for (std::ptrdiff_t k = 0; k < n; ++k)
        y[static_cast<std::size_t>(k)] = (1.0 - frac) * at(k - whole) + frac * at(k - whole - 1);
    return y;
}

ComplexSignal propagate_ota(std::span<const ComplexSignal> frames, const OtaChannelParams& params,
                            double carrier_hz, std::mt19937_64& rng) {
    check_frames(frames);
    if (params.element_delays_s.size() < frames.size())
        throw ShapeError("propagate_ota: missing element delays");
    const double fs = frames.front().sample_rate_hz;
    ComplexSignal out(std::vector<cplx>(frames.front().size(), cplx{0.0, 0.0}), fs, frames.front().start_time_s);

    for (std::size_t m = 0; m < frames.size(); ++m) {
        const double tau = params.element_delays_s[m] + params.path_delay_s;
        const cplx rot = params.gain * std::polar(1.0, carrier_delay_phase(carrier_hz, tau));
        if (params.delay_model == DelayModel::sample_shift)
            kernels::accumulate_scaled(out.samples, fractional_delay(frames[m].samples, tau * fs), rot);
        else
            kernels::accumulate_scaled(out.samples, frames[m].samples, rot);
    }

    if (params.noise_var > 0.0) {
        std::normal_distribution<double> normal(0.0, std::sqrt(params.noise_var / 2.0));
        for (auto& v : out.samples) {
            const double re = normal(rng);
            const double im = normal(rng);
            v += cplx{re, im};
        }
    }
    return out;
}

}  // namespace phasecal
