#include "phasecal/transport.hpp"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <stdexcept>
#include <string>

namespace phasecal {

std::optional<FeedbackMessage> InProcessLink::receive(std::chrono::milliseconds) {
    if (queue_.empty()) return std::nullopt;
    FeedbackMessage msg = queue_.front();
    queue_.pop_front();
    return msg;
}

namespace {

[[noreturn]] void throw_errno(const std::string& what) {
    throw std::runtime_error(what + ": " + std::strerror(errno));
}

sockaddr_in loopback(std::uint16_t port) {
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_port = htons(port);
    addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
    return addr;
}

}  // namespace

UdpLink::UdpLink(std::uint16_t port) {
    rx_fd_ = ::socket(AF_INET, SOCK_DGRAM, 0);
    if (rx_fd_ < 0) throw_errno("udp socket");
    int rcvbuf = 1 << 20;
    ::setsockopt(rx_fd_, SOL_SOCKET, SO_RCVBUF, &rcvbuf, sizeof(rcvbuf));
    sockaddr_in addr = loopback(port);
    if (::bind(rx_fd_, reinterpret_cast<const sockaddr*>(&addr), sizeof(addr)) < 0) {
        ::close(rx_fd_);
        throw_errno("udp bind to port " + std::to_string(port));
    }
    socklen_t len = sizeof(addr);
    ::getsockname(rx_fd_, reinterpret_cast<sockaddr*>(&addr), &len);
    port_ = ntohs(addr.sin_port);

    tx_fd_ = ::socket(AF_INET, SOCK_DGRAM, 0);
    if (tx_fd_ < 0) {
        ::close(rx_fd_);
        throw_errno("udp socket");
    }
}

UdpLink::~UdpLink() {
    if (rx_fd_ >= 0) ::close(rx_fd_);
    if (tx_fd_ >= 0) ::close(tx_fd_);
}

void UdpLink::send(const FeedbackMessage& msg) {
    const FeedbackPayload payload = encode_feedback(msg);
    const sockaddr_in dst = loopback(port_);
    const auto sent = ::sendto(tx_fd_, payload.data(), payload.size(), 0,
                               reinterpret_cast<const sockaddr*>(&dst), sizeof(dst));
    if (sent != static_cast<ssize_t>(payload.size())) throw_errno("udp sendto");
}

std::optional<FeedbackMessage> UdpLink::receive(std::chrono::milliseconds timeout) {
    std::uint8_t buf[64];
    for (;;) {
        pollfd pfd{rx_fd_, POLLIN, 0};
        const int ready = ::poll(&pfd, 1, static_cast<int>(timeout.count()));
        if (ready < 0) {
            if (errno == EINTR) continue;
            throw_errno("udp poll");
        }
        if (ready == 0) return std::nullopt;
        const auto got = ::recv(rx_fd_, buf, sizeof(buf), 0);
        if (got < 0) {
            if (errno == EINTR) continue;
            throw_errno("udp recv");
        }
        try {
            return decode_feedback(std::span<const std::uint8_t>(buf, static_cast<std::size_t>(got)));
        } catch (const FeedbackDecodeError&) {
            ++dropped_;
        }
    }
}

TransportKind transport_kind_from_string(std::string_view name) {
    if (name == "inproc") return TransportKind::inproc;
    if (name == "udp") return TransportKind::udp;
    throw std::invalid_argument("transport must be inproc or udp");
}

std::unique_ptr<FeedbackLink> make_link(TransportKind kind, std::uint16_t port) {
    if (kind == TransportKind::udp) return std::make_unique<UdpLink>(port);
    return std::make_unique<InProcessLink>();
}

}  // namespace phasecal
