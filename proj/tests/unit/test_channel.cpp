#include <doctest.h>

#include <cmath>
#include <vector>

#include "phasecal/channel.hpp"
#include "phasecal/metrics.hpp"
#include "phasecal/rng.hpp"
#include "phasecal/waveform.hpp"

using namespace phasecal;

namespace {

std::vector<ComplexSignal> tdma_frames(std::size_t chains, std::size_t n, std::size_t guard) {
    SystemConfig c;
    c.num_chains = chains;
    c.num_chirp_samples = n;
    c.guard_samples = guard;
    c = validate(c);
    return build_frame(c, generate_chirp(c.bandwidth_hz, c.sample_rate_hz, n)).chains;
}

}  // namespace

TEST_CASE("ULA delays") {
    for (std::size_t m = 0; m < 4; ++m) CHECK(ula_delay(m, 0.04, 0.0) == 0.0);
    CHECK(ula_delay(0, 0.04, 0.7) == 0.0);
    CHECK(ula_delay(1, 0.04, kPi / 6) == doctest::Approx(6.671e-11).epsilon(1e-4));
    // Half-wavelength spacing at 30 degrees is a quarter carrier cycle.
    const double d = kSpeedOfLight / (2 * 3.75e9);
    CHECK(kTwoPi * 3.75e9 * ula_delay(1, d, kPi / 6) == doctest::Approx(kPi / 2));
}

TEST_CASE("wired combiner") {
    std::vector<ComplexSignal> one{ComplexSignal({cplx{1, 2}, cplx{3, 4}}, 1.0)};
    CHECK(propagate_local(one).samples == one[0].samples);

    const auto frames = tdma_frames(2, 32, 4);
    const auto sum = propagate_local(frames);
    const auto s = FrameSchedule::make(2, 32, 4);
    for (std::size_t m = 0; m < 2; ++m)
        for (std::size_t k = 0; k < 32; ++k)
            CHECK(sum.samples[s.chirp_begin(m) + k] == frames[m].samples[s.chirp_begin(m) + k]);

    std::vector<ComplexSignal> ones(2, ComplexSignal(std::vector<cplx>(8, cplx{1, 0}), 1.0));
    for (const auto& v : propagate_local(ones).samples) CHECK(v == cplx{2, 0});

    std::vector<ComplexSignal> bad{ComplexSignal(std::vector<cplx>(3), 1.0), ComplexSignal(std::vector<cplx>(4), 1.0)};
    CHECK_THROWS_AS(propagate_local(bad), ShapeError);
}

TEST_CASE("degenerate OTA channel equals the wired combiner") {
    const auto frames = tdma_frames(3, 64, 8);
    OtaChannelParams p;
    p.element_delays_s.assign(3, 0.0);
    auto rng = make_stream(1, 2);
    CHECK(propagate_ota(frames, p, 3.75e9, rng).samples == propagate_local(frames).samples);
}

TEST_CASE("path delay rotates each slot by -2 pi f_c tau_ch") {
    const auto frames = tdma_frames(2, 64, 8);
    OtaChannelParams p;
    p.element_delays_s.assign(2, 0.0);
    p.path_delay_s = 2.0 / kSpeedOfLight;
    auto rng = make_stream(1, 2);
    const auto out = propagate_ota(frames, p, 3.75e9, rng);
    const auto local = propagate_local(frames);
    const double want = -kTwoPi * 3.75e9 * p.path_delay_s;
    for (std::size_t n = 0; n < out.size(); ++n) {
        if (std::abs(local.samples[n]) == 0.0) continue;
        CHECK(std::abs(wrap_phase(std::arg(out.samples[n] / local.samples[n]) - want)) < 1e-9);
    }
}

TEST_CASE("OTA noise variance at 30 dB SNR") {
    SystemConfig c;
    c.ota_snr_db = 30;
    CHECK(c.ota_noise_var() == doctest::Approx(1e-3));
    OtaChannelParams p;
    p.element_delays_s.assign(1, 0.0);
    p.noise_var = c.ota_noise_var();
    std::vector<ComplexSignal> silent{ComplexSignal(std::vector<cplx>(1000000), 1.0)};
    auto rng = make_stream(4, 4);
    const auto out = propagate_ota(silent, p, 3.75e9, rng);
    double power = 0.0;
    for (const auto& v : out.samples) power += std::norm(v);
    CHECK(power / 1e6 == doctest::Approx(1e-3).epsilon(0.01));
}

TEST_CASE("geometry switch and default spacing") {
    SystemConfig c = validate(SystemConfig{});
    c.rx_angle_rad = kPi / 6;
    auto p = make_ota_params(c);
    CHECK(p.path_delay_s == doctest::Approx(2.0 / kSpeedOfLight));
    CHECK(p.element_delays_s[3] == doctest::Approx(3 * c.spacing_m() / kSpeedOfLight * 0.5));
    c.ota_geometry_phase = false;
    p = make_ota_params(c);
    CHECK(p.path_delay_s == 0.0);
    for (double d : p.element_delays_s) CHECK(d == 0.0);
}

TEST_CASE("fractional delay by linear interpolation") {
    const std::vector<cplx> x{cplx{1, 0}, cplx{3, 0}, cplx{5, 0}};
    const auto y = fractional_delay(x, 0.5);
    CHECK(y[0] == cplx{0.5, 0});
    CHECK(y[1] == cplx{2, 0});
    CHECK(y[2] == cplx{4, 0});
    CHECK(fractional_delay(x, 0.0) == x);
}

TEST_CASE("OTA minus local phase is -2 pi f_c (tau_p + tau_ch) + arg rho per slot") {
    const auto frames = tdma_frames(3, 64, 8);
    const FrameSchedule schedule = FrameSchedule::make(3, 64, 8);
    OtaChannelParams p;
    p.gain = std::polar(0.3, 0.9);
    p.path_delay_s = 1.37 / kSpeedOfLight;
    p.element_delays_s = {0.0, 0.021 / kSpeedOfLight, 0.042 / kSpeedOfLight};
    const double fc = 3.75e9;
    auto rng = make_stream(1, 2);
    const auto out = propagate_ota(frames, p, fc, rng);
    const auto local = propagate_local(frames);
    for (std::size_t m = 0; m < 3; ++m) {
        const double want = wrap_phase(-kTwoPi * fc * (p.element_delays_s[m] + p.path_delay_s) + 0.9);
        for (std::size_t k = 0; k < 64; ++k) {
            const std::size_t n = schedule.chirp_begin(m) + k;
            const cplx ratio = out.samples[n] / local.samples[n];
            CHECK(std::abs(wrap_phase(std::arg(ratio) - want)) < 1e-9);
            CHECK(std::abs(ratio) == doctest::Approx(0.3).epsilon(1e-12));
        }
    }
}
