#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <span>
#include <stdexcept>
#include <vector>

#include "phasecal/types.hpp"

namespace phasecal {

/// Precodes each chain with the mean of its last `window` phase estimates.
/// Single consumer: only the loop thread calls update().
class SmoothedCalibrator {
public:
    explicit SmoothedCalibrator(std::size_t num_chains, std::size_t window = 10);

    /// Pushes the estimate into its chain's history and returns the new
    /// precoding phase. The history is unwrapped relative to its newest entry,
    /// averaged and re-wrapped; with fewer than `window` entries all available
    /// entries are averaged.
    double update(const PhaseEstimate& estimate);

    double precoding(std::size_t chain) const { return precoding_.at(chain); }
    const std::vector<double>& precoding() const { return precoding_; }
    std::size_t history_size(std::size_t chain) const { return history_.at(chain).size(); }
    std::size_t window() const { return window_; }
    std::size_t num_chains() const { return precoding_.size(); }

private:
    std::size_t window_;
    std::vector<std::deque<double>> history_;
    std::vector<double> precoding_;
};

/// Multiplies chain m by exp(-j * p_m).
std::vector<ComplexSignal> apply_precoding(std::span<const ComplexSignal> frames,
                                           std::span<const double> precoding_rad);

/// Estimator -> TX controller feedback record.
struct FeedbackMessage {
    std::uint8_t chain_index = 0;
    std::uint32_t cycle_index = 0;
    double theta_rad = 0.0;
    std::uint64_t timestamp_us = 0;

    bool operator==(const FeedbackMessage&) const = default;
};

/// Wire layout, little-endian, 26 bytes:
///   "PHCF" | version 0x01 | chain u8 | cycle u32 | theta binary64 | timestamp_us u64
inline constexpr std::size_t kFeedbackPayloadSize = 26;
inline constexpr std::uint8_t kFeedbackVersion = 0x01;
using FeedbackPayload = std::array<std::uint8_t, kFeedbackPayloadSize>;

class FeedbackDecodeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

FeedbackPayload encode_feedback(const FeedbackMessage& msg);
FeedbackMessage decode_feedback(std::span<const std::uint8_t> payload);

}  // namespace phasecal
