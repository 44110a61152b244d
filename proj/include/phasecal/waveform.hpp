#pragma once

#include <cstddef>
#include <vector>

#include "phasecal/config.hpp"
#include "phasecal/types.hpp"

namespace phasecal {

/// TDMA slot timing. Chain m owns [slot_offsets[m], slot_offsets[m] + slot_length);
/// its chirp sits after `guard` leading zeros.
struct FrameSchedule {
    std::size_t guard_samples = 0;
    std::size_t chirp_samples = 0;
    std::size_t slot_length_samples = 0;
    std::vector<std::size_t> slot_offsets;
    std::size_t frame_length_samples = 0;

    static FrameSchedule make(std::size_t num_chains, std::size_t chirp_samples, std::size_t guard_samples);

    std::size_t num_chains() const { return slot_offsets.size(); }
    /// First chirp-bearing sample of chain m.
    std::size_t chirp_begin(std::size_t m) const { return slot_offsets.at(m) + guard_samples; }
};

/// x[n] = exp(j*pi*(B/T)*(n*Ts)^2) with T = N*Ts.
ComplexSignal generate_chirp(double bandwidth_hz, double sample_rate_hz, std::size_t num_samples);

struct TdmaFrame {
    std::vector<ComplexSignal> chains;  // one frame-length signal per chain
    FrameSchedule schedule;
};

TdmaFrame build_frame(const SystemConfig& config, const ComplexSignal& chirp);

}  // namespace phasecal
