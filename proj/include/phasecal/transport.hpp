#pragma once

#include <chrono>
#include <cstdint>
#include <deque>
#include <memory>
#include <optional>
#include <string_view>

#include "phasecal/calibration.hpp"

namespace phasecal {

/// One-way feedback link from the estimator to the TX controller.
class FeedbackLink {
public:
    virtual ~FeedbackLink() = default;
    virtual void send(const FeedbackMessage& msg) = 0;
    /// Next message, or nullopt if none arrives within `timeout` (treated as lost).
    virtual std::optional<FeedbackMessage> receive(std::chrono::milliseconds timeout) = 0;
};

/// Messages handed over in memory, never encoded.
class InProcessLink final : public FeedbackLink {
public:
    void send(const FeedbackMessage& msg) override { queue_.push_back(msg); }
    std::optional<FeedbackMessage> receive(std::chrono::milliseconds timeout) override;

private:
    std::deque<FeedbackMessage> queue_;
};

/// Encoded datagrams over loopback UDP. The receiving socket binds
/// 127.0.0.1:`port` (0 picks an ephemeral port). Malformed datagrams are dropped.
class UdpLink final : public FeedbackLink {
public:
    explicit UdpLink(std::uint16_t port = 0);
    ~UdpLink() override;
    UdpLink(const UdpLink&) = delete;
    UdpLink& operator=(const UdpLink&) = delete;

    void send(const FeedbackMessage& msg) override;
    std::optional<FeedbackMessage> receive(std::chrono::milliseconds timeout) override;

    std::uint16_t port() const { return port_; }
    std::uint64_t dropped_datagrams() const { return dropped_; }

private:
    int rx_fd_ = -1;
    int tx_fd_ = -1;
    std::uint16_t port_ = 0;
    std::uint64_t dropped_ = 0;
};

enum class TransportKind { inproc, udp };
TransportKind transport_kind_from_string(std::string_view name);

std::unique_ptr<FeedbackLink> make_link(TransportKind kind, std::uint16_t port = 0);

}  // namespace phasecal
