#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace phasecal {

using cplx = std::complex<double>;

inline constexpr double kSpeedOfLight = 2.99792458e8;  // m/s
inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Wraps an angle into (-pi, pi].
double wrap_phase(double rad);

/// Sample buffer tagged with its sample rate and its offset within the frame.
struct ComplexSignal {
    std::vector<cplx> samples;
    double sample_rate_hz = 1.0;
    double start_time_s = 0.0;

    ComplexSignal() = default;
    ComplexSignal(std::vector<cplx> s, double fs, double t0 = 0.0)
        : samples(std::move(s)), sample_rate_hz(fs), start_time_s(t0) {}

    std::size_t size() const { return samples.size(); }
    bool empty() const { return samples.empty(); }
    double duration_s() const { return static_cast<double>(samples.size()) / sample_rate_hz; }
};

enum class ReceiverKind : std::uint8_t { local = 0, ota = 1 };

std::string_view to_string(ReceiverKind kind);
ReceiverKind receiver_kind_from_string(std::string_view name);

struct PhaseEstimate {
    std::size_t chain = 0;
    std::size_t cycle = 0;
    double theta_rad = 0.0;  // wrapped to (-pi, pi]
    double jitter_s = 0.0;   // theta_rad / (2 pi f_c)
    ReceiverKind receiver = ReceiverKind::local;

    static PhaseEstimate make(std::size_t chain, std::size_t cycle, double theta_rad,
                              double carrier_hz, ReceiverKind kind);
};

/// Thrown for length/shape mismatches between stages.
class ShapeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace phasecal
