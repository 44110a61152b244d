#include "phasecal/types.hpp"

#include <cmath>

namespace phasecal {

double wrap_phase(double rad) {
    double w = std::remainder(rad, kTwoPi);  // [-pi, pi]
    if (w <= -kPi) w += kTwoPi;
    return w;
}

std::string_view to_string(ReceiverKind kind) {
    return kind == ReceiverKind::local ? "local" : "ota";
}

ReceiverKind receiver_kind_from_string(std::string_view name) {
    if (name == "local") return ReceiverKind::local;
    if (name == "ota") return ReceiverKind::ota;
    throw std::invalid_argument("unknown receiver kind '" + std::string(name) + "'");
}

PhaseEstimate PhaseEstimate::make(std::size_t chain, std::size_t cycle, double theta_rad,
                                  double carrier_hz, ReceiverKind kind) {
    PhaseEstimate e;
    e.chain = chain;
    e.cycle = cycle;
    e.theta_rad = wrap_phase(theta_rad);
    e.jitter_s = e.theta_rad / (kTwoPi * carrier_hz);
    e.receiver = kind;
    return e;
}

}  // namespace phasecal
