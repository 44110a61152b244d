#include "phasecal/waveform.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace phasecal {

FrameSchedule FrameSchedule::make(std::size_t num_chains, std::size_t chirp_samples,
                                  std::size_t guard_samples) {
    FrameSchedule s;
    s.guard_samples = guard_samples;
    s.chirp_samples = chirp_samples;
    s.slot_length_samples = 2 * guard_samples + chirp_samples;
    s.slot_offsets.resize(num_chains);
    for (std::size_t m = 0; m < num_chains; ++m) s.slot_offsets[m] = m * s.slot_length_samples;
    s.frame_length_samples = num_chains * s.slot_length_samples;
    return s;
}

ComplexSignal generate_chirp(double bandwidth_hz, double sample_rate_hz, std::size_t num_samples) {
    if (!(bandwidth_hz >= 0.0)) throw std::invalid_argument("generate_chirp: bandwidth must be >= 0");
    if (!(sample_rate_hz > 0.0)) throw std::invalid_argument("generate_chirp: sample rate must be positive");
    if (num_samples == 0) throw std::invalid_argument("generate_chirp: need at least one sample");
    const double ts = 1.0 / sample_rate_hz;
    const double duration = static_cast<double>(num_samples) * ts;
    const double rate = kPi * bandwidth_hz / duration;
    std::vector<cplx> x(num_samples);
    for (std::size_t n = 0; n < num_samples; ++n) {
        const double t = static_cast<double>(n) * ts;
        x[n] = std::polar(1.0, rate * t * t);
    }
    return ComplexSignal(std::move(x), sample_rate_hz);
}

TdmaFrame build_frame(const SystemConfig& config, const ComplexSignal& chirp) {
    if (chirp.size() != config.num_chirp_samples)
        throw ShapeError("build_frame: chirp length does not match num_chirp_samples");
    TdmaFrame frame;
    frame.schedule = FrameSchedule::make(config.num_chains, config.num_chirp_samples, config.guard_samples);
    frame.chains.reserve(config.num_chains);
    for (std::size_t m = 0; m < config.num_chains; ++m) {
        std::vector<cplx> samples(frame.schedule.frame_length_samples, cplx{0.0, 0.0});
        std::copy(chirp.samples.begin(), chirp.samples.end(),
                  samples.begin() + static_cast<std::ptrdiff_t>(frame.schedule.chirp_begin(m)));
        frame.chains.emplace_back(std::move(samples), chirp.sample_rate_hz);
    }
    return frame;
}

}  // namespace phasecal
