#include "selftest.hpp"

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "phasecal/calibration.hpp"
#include "phasecal/channel.hpp"
#include "phasecal/config_io.hpp"
#include "phasecal/impairments.hpp"
#include "phasecal/metrics.hpp"
#include "phasecal/presets.hpp"
#include "phasecal/receiver.hpp"
#include "phasecal/simulation.hpp"
#include "phasecal/waveform.hpp"

namespace phasecal::tools {

namespace {

struct Check {
    std::string name;
    std::function<bool()> run;
};

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

ComplexSignal constant_phase(std::size_t n, std::function<double(std::size_t)> phase) {
    ComplexSignal s;
    s.sample_rate_hz = 1.0;
    for (std::size_t k = 0; k < n; ++k) s.samples.push_back(std::polar(1.0, phase(k)));
    return s;
}

std::vector<Check> checks() {
    std::vector<Check> c;
    c.push_back({"chirp phases B=2 Hz, fs=4 Hz, N=4", [] {
                     const auto x = generate_chirp(2.0, 4.0, 4);
                     const double want[] = {0.0, 0.3927, 1.5708, 3.5343 - kTwoPi};
                     for (int n = 0; n < 4; ++n)
                         if (!near(std::arg(x.samples[n]), want[n], 1e-4)) return false;
                     return true;
                 }});
    c.push_back({"TDMA schedule M=4, N=1500, guard=500", [] {
                     const auto s = FrameSchedule::make(4, 1500, 500);
                     return s.slot_length_samples == 2500 && s.frame_length_samples == 10000 &&
                            s.slot_offsets == std::vector<std::size_t>{0, 2500, 5000, 7500};
                 }});
    c.push_back({"drift at t = tau is 0.6321 A", [] { return near(drift_phase(60.0, 1.0, 60.0), 0.6321, 1e-4); }});
    c.push_back({"ULA delay m=1, d=4 cm, 30 deg", [] {
                     return near(ula_delay(1, 0.04, kPi / 6), 6.671e-11, 1e-14);
                 }});
    c.push_back({"unwrap [3.0, -3.1, 2.9]", [] {
                     const auto u = unwrap_phases(std::vector<double>{3.0, -3.1, 2.9});
                     return near(u[0], 3.0, 1e-12) && near(u[1], 3.1832, 1e-4) && near(u[2], 2.9, 1e-12);
                 }});
    c.push_back({"estimate of linear phase ramp is its mean", [] {
                     const auto h = constant_phase(5, [](std::size_t n) { return 0.1 + 0.01 * double(n); });
                     return near(estimate_phase(h), 0.12, 1e-12);
                 }});
    c.push_back({"calibrator startup mean", [] {
                     SmoothedCalibrator cal(1);
                     double p = 0;
                     for (double v : {0.1, 0.2, 0.3}) p = cal.update(PhaseEstimate::make(0, 0, v, 1.0, ReceiverKind::local));
                     return near(p, 0.2, 1e-12);
                 }});
    c.push_back({"calibrator window over linear drift", [] {
                     SmoothedCalibrator cal(1, 10);
                     double p = 0;
                     for (int l = 0; l < 20; ++l)
                         p = cal.update(PhaseEstimate::make(0, l, 0.01 * l, 1.0, ReceiverKind::local));
                     return near(p, 0.145, 1e-12);
                 }});
    c.push_back({"feedback encoding layout", [] {
                     const auto p = encode_feedback({2, 7, 0.0, 0});
                     const std::uint8_t head[] = {0x50, 0x48, 0x43, 0x46, 0x01, 0x02, 0x07, 0, 0, 0};
                     for (int k = 0; k < 10; ++k)
                         if (p[k] != head[k]) return false;
                     for (std::size_t k = 10; k < p.size(); ++k)
                         if (p[k] != 0) return false;
                     return decode_feedback(p) == FeedbackMessage{2, 7, 0.0, 0};
                 }});
    c.push_back({"jitter of 0.0309 rad at 3.75 GHz", [] {
                     return near(phase_to_jitter(0.0309, 3.75e9), 1.311e-12, 1e-15);
                 }});
    c.push_back({"RMS c2c of [0,1,0,1] and [0,3,3]", [] {
                     return near(rms_c2c_jitter(std::vector<double>{0, 1, 0, 1}), 1.0, 1e-12) &&
                            near(rms_c2c_jitter(std::vector<double>{0, 3, 3}), 2.1213, 1e-4);
                 }});
    c.push_back({"KDE {-1, 1}, h = 1 at 0", [] {
                     const KernelDensity f({-1.0, 1.0}, 1.0);
                     const auto g = f.evaluate_grid();
                     return near(f(0.0), 0.2420, 1e-4) && near(trapezoid(g.x, g.density), 1.0, 1e-3);
                 }});
    c.push_back({"coherence of quadrature phasors", [] {
                     return near(coherence_factor(std::vector<double>{0, kPi / 2, kPi, 3 * kPi / 2}), 0.0, 1e-12) &&
                            near(coherence_factor(std::vector<double>{0, 0}), 1.0, 1e-12);
                 }});
    c.push_back({"bundled presets parse", [] {
                     const auto hi = preset_config("table1_high");
                     const auto lo = preset_config("table1_low");
                     return hi.carrier_freq_hz == 3.75e9 && hi.bandwidth_hz == 40e6 && hi.num_chirp_samples == 1500 &&
                            lo.bandwidth_hz == 2e6 && lo.sample_rate_hz == 4e6;
                 }});
    c.push_back({"clean scenario estimates are zero", [] {
                     SimulationOptions o;
                     o.config = preset_config("table1_high");
                     o.scenario = "clean";
                     o.cycles = 20;
                     const auto r = run_simulation(o);
                     for (const auto& rx : r.streams.theta_rad)
                         for (const auto& chain : rx)
                             for (double t : chain)
                                 if (std::abs(t) > 1e-12) return false;
                     return true;
                 }});
    c.push_back({"constant-phase scenario recovers theta_RF locally", [] {
                     SimulationOptions o;
                     o.config = preset_config("table1_high");
                     o.scenario = "constant-phase";
                     o.cycles = 3;
                     const auto r = run_simulation(o);
                     for (std::size_t m = 0; m < 4; ++m)
                         if (!near(r.streams.theta_rad[0][m][2], 0.1 * double(m + 1), 1e-12)) return false;
                     return true;
                 }});
    return c;
}

}  // namespace

int run_selftest(std::ostream& out) {
    int failures = 0;
    for (const auto& check : checks()) {
        bool ok = false;
        try {
            ok = check.run();
        } catch (const std::exception& e) {
            out << "  exception: " << e.what() << '\n';
        }
        out << (ok ? "PASS  " : "FAIL  ") << check.name << '\n';
        failures += ok ? 0 : 1;
    }
    out << (failures == 0 ? "selftest passed\n" : "selftest FAILED\n");
    return failures;
}

}  // namespace phasecal::tools
