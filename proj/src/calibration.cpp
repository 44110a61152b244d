#include "phasecal/calibration.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "phasecal/kernels.hpp"

namespace phasecal {

SmoothedCalibrator::SmoothedCalibrator(std::size_t num_chains, std::size_t window)
    : window_(window), history_(num_chains), precoding_(num_chains, 0.0) {
    if (window == 0) throw std::invalid_argument("SmoothedCalibrator: window must be >= 1");
}

double SmoothedCalibrator::update(const PhaseEstimate& estimate) {
    if (estimate.chain >= history_.size())
        throw std::out_of_range("SmoothedCalibrator: chain index " + std::to_string(estimate.chain) +
                                " out of range");
    auto& h = history_[estimate.chain];
    h.push_back(estimate.theta_rad);
    if (h.size() > window_) h.pop_front();

    const double newest = h.back();
    double offset = 0.0;
    for (double v : h) offset += wrap_phase(v - newest);
    const double p = wrap_phase(newest + offset / static_cast<double>(h.size()));
    precoding_[estimate.chain] = p;
    return p;
}

std::vector<ComplexSignal> apply_precoding(std::span<const ComplexSignal> frames,
                                           std::span<const double> precoding_rad) {
    if (frames.size() != precoding_rad.size())
        throw ShapeError("apply_precoding: one precoding phase per chain required");
    std::vector<ComplexSignal> out(frames.begin(), frames.end());
    for (std::size_t m = 0; m < out.size(); ++m) kernels::rotate_constant(out[m].samples, -precoding_rad[m]);
    return out;
}

namespace {

template <typename T>
void put_le(std::uint8_t* dst, T value) {
    for (std::size_t i = 0; i < sizeof(T); ++i) dst[i] = static_cast<std::uint8_t>(value >> (8 * i));
}

template <typename T>
T get_le(const std::uint8_t* src) {
    T value = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) value |= static_cast<T>(src[i]) << (8 * i);
    return value;
}

constexpr std::array<std::uint8_t, 4> kMagic{0x50, 0x48, 0x43, 0x46};  // "PHCF"

}  // namespace

FeedbackPayload encode_feedback(const FeedbackMessage& msg) {
    FeedbackPayload out{};
    std::copy(kMagic.begin(), kMagic.end(), out.begin());
    out[4] = kFeedbackVersion;
    out[5] = msg.chain_index;
    put_le<std::uint32_t>(out.data() + 6, msg.cycle_index);
    put_le<std::uint64_t>(out.data() + 10, std::bit_cast<std::uint64_t>(msg.theta_rad));
    put_le<std::uint64_t>(out.data() + 18, msg.timestamp_us);
    return out;
}

FeedbackMessage decode_feedback(std::span<const std::uint8_t> payload) {
    if (payload.size() < kFeedbackPayloadSize) throw FeedbackDecodeError("short payload");
    if (payload.size() > kFeedbackPayloadSize) throw FeedbackDecodeError("oversized payload");
    if (!std::equal(kMagic.begin(), kMagic.end(), payload.begin())) throw FeedbackDecodeError("bad magic");
    if (payload[4] != kFeedbackVersion) throw FeedbackDecodeError("unknown version");
    FeedbackMessage msg;
    msg.chain_index = payload[5];
    msg.cycle_index = get_le<std::uint32_t>(payload.data() + 6);
    msg.theta_rad = std::bit_cast<double>(get_le<std::uint64_t>(payload.data() + 10));
    msg.timestamp_us = get_le<std::uint64_t>(payload.data() + 18);
    return msg;
}

}  // namespace phasecal
