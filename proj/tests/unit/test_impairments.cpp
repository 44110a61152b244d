#include <doctest.h>

#include <cmath>
#include <vector>

#include "phasecal/impairments.hpp"
#include "phasecal/metrics.hpp"
#include "phasecal/rng.hpp"

using namespace phasecal;

namespace {

ChainImpairmentState state_with(ChainParams p, std::uint64_t seed = 11,
                                OscillatorMode mode = OscillatorMode::free_running) {
    return ChainImpairmentState(0, p, make_stream(seed, 0), mode);
}

}  // namespace

TEST_CASE("noiseless oscillator never moves") {
    auto s = state_with({});
    s.advance_oscillator(0.05);
    s.advance_oscillator(10.0);
    CHECK(s.current_osc_phase() == 0.0);
    CHECK_THROWS(s.advance_oscillator(-1.0));
}

TEST_CASE("dt = 0 leaves the state unchanged") {
    ChainParams p;
    p.wiener_rate_rad2_per_s = 1.0;
    auto s = state_with(p);
    s.advance_oscillator(0.3);
    const double before = s.current_osc_phase();
    s.advance_oscillator(0.0);
    CHECK(s.current_osc_phase() == before);
}

TEST_CASE("Wiener increments have variance rate * dt") {
    ChainParams p;
    p.wiener_rate_rad2_per_s = 1e-4;
    auto s = state_with(p, 5);
    std::vector<double> inc;
    inc.reserve(100000);
    for (int i = 0; i < 100000; ++i) {
        const double before = s.current_osc_phase();
        s.advance_oscillator(0.05);
        inc.push_back(s.current_osc_phase() - before);
    }
    const double var = std::pow(sample_stddev(inc), 2);
    CHECK(var == doctest::Approx(5e-6).epsilon(0.05));
}

TEST_CASE("trajectory with both variances zero is constant at the current phase") {
    auto s = state_with({});
    const auto tr = s.oscillator_trajectory(64, 1e6);
    for (double v : tr) CHECK(v == 0.0);
}

TEST_CASE("white phase term has the configured variance") {
    ChainParams p;
    p.white_phase_var_rad2 = 1e-6;
    auto s = state_with(p, 9);
    const auto tr = s.oscillator_trajectory(1000000, 80e6);
    CHECK(std::pow(sample_stddev(tr), 2) == doctest::Approx(1e-6).epsilon(0.01));
}

TEST_CASE("trajectory advances the Wiener state by n / fs") {
    ChainParams p;
    p.wiener_rate_rad2_per_s = 50.0;
    // Over many independent trajectories the end-point variance is rate * n / fs.
    std::vector<double> ends;
    for (std::uint64_t seed = 0; seed < 4000; ++seed) {
        auto s = state_with(p, seed);
        s.oscillator_trajectory(100, 1e3);
        ends.push_back(s.current_osc_phase());
    }
    CHECK(std::pow(sample_stddev(ends), 2) == doctest::Approx(5.0).epsilon(0.08));
}

TEST_CASE("reference-locked trigger restarts the wander, free-running keeps it") {
    ChainParams p;
    p.wiener_rate_rad2_per_s = 1.0;
    auto locked = state_with(p, 3, OscillatorMode::reference_locked);
    auto free = state_with(p, 3, OscillatorMode::free_running);
    locked.advance_oscillator(1.0);
    free.advance_oscillator(1.0);
    const double wandered = free.current_osc_phase();
    locked.trigger();
    free.trigger();
    CHECK(locked.current_osc_phase() == 0.0);
    CHECK(free.current_osc_phase() == wandered);
}

TEST_CASE("warm-up drift") {
    CHECK(drift_phase(0.0, 0.3, 60.0) == 0.0);
    CHECK(std::abs(drift_phase(50 * 60.0, 0.3, 60.0) - 0.3) < 1e-12);
    CHECK(drift_phase(60.0, 1.0, 60.0) == doctest::Approx(0.6321).epsilon(1e-4));
    DriftParams d{0.0, 60.0, 0.25};
    CHECK(drift_phase(4.0, d) == doctest::Approx(1.0));
    CHECK_THROWS(drift_phase(1.0, 1.0, 0.0));
}

namespace {

struct OneChain {
    FrameSchedule schedule = FrameSchedule::make(2, 64, 8);
    ComplexSignal frame;
    OneChain() {
        frame.sample_rate_hz = 80e6;
        frame.samples.assign(schedule.frame_length_samples, cplx{0, 0});
        for (std::size_t k = 0; k < 64; ++k) frame.samples[schedule.chirp_begin(1) + k] = cplx{1, 0};
    }
};

}  // namespace

TEST_CASE("no impairments: output equals input") {
    OneChain f;
    auto s = ChainImpairmentState(1, {}, make_stream(1, 1));
    const auto out = apply_tx_impairments(f.frame, s, f.schedule, 0.0, 1e-3);
    CHECK(out.samples == f.frame.samples);
}

TEST_CASE("theta_RF rotates every nonzero sample by exactly that angle") {
    OneChain f;
    ChainParams p;
    p.theta_rf_rad = 0.7;
    auto s = ChainImpairmentState(1, p, make_stream(1, 1));
    const auto out = apply_tx_impairments(f.frame, s, f.schedule, 0.0, 1e-3);
    for (std::size_t n = 0; n < out.size(); ++n) {
        if (f.frame.samples[n] == cplx{0, 0}) {
            CHECK(out.samples[n] == cplx{0, 0});
        } else {
            CHECK(std::abs(std::arg(out.samples[n]) - 0.7) < 1e-14);
        }
    }
}

TEST_CASE("CFO is a per-sample phase ramp 2 pi cfo n / fs") {
    OneChain f;
    ChainParams p;
    p.cfo_hz = 1e3;
    auto s = ChainImpairmentState(1, p, make_stream(1, 1));
    const auto out = apply_tx_impairments(f.frame, s, f.schedule, 0.0, 1e-3);
    const std::size_t b = f.schedule.chirp_begin(1);
    for (std::size_t k = 0; k < 64; ++k) {
        const double want = kTwoPi * 1e3 * static_cast<double>(b + k) / 80e6;
        CHECK(std::abs(wrap_phase(std::arg(out.samples[b + k]) - want)) < 1e-12);
    }
}

TEST_CASE("trajectory end variance over a 1500-sample chirp at 4 MHz") {
    ChainParams p;
    p.wiener_rate_rad2_per_s = 4e-2;
    std::vector<double> ends;
    ends.reserve(10000);
    for (std::uint64_t seed = 0; seed < 10000; ++seed) {
        auto s = state_with(p, seed);
        ends.push_back(s.oscillator_trajectory(1500, 4e6).back());
    }
    CHECK(std::pow(sample_stddev(ends), 2) == doctest::Approx(1.5e-5).epsilon(0.05));
}

TEST_CASE("Wiener variance grows linearly with elapsed time") {
    ChainParams p;
    p.wiener_rate_rad2_per_s = 2.0;
    std::vector<double> at1, at4;
    for (std::uint64_t seed = 0; seed < 4000; ++seed) {
        auto s = state_with(p, seed);
        s.advance_oscillator(0.25);
        at1.push_back(s.current_osc_phase());
        s.advance_oscillator(0.75);
        at4.push_back(s.current_osc_phase());
    }
    const double v1 = std::pow(sample_stddev(at1), 2);
    const double v4 = std::pow(sample_stddev(at4), 2);
    CHECK(v1 == doctest::Approx(0.5).epsilon(0.08));
    CHECK(v4 == doctest::Approx(2.0).epsilon(0.08));
    CHECK(v4 / v1 == doctest::Approx(4.0).epsilon(0.12));
}

TEST_CASE("impairments preserve sample magnitude") {
    OneChain f;
    ChainParams p;
    p.theta_rf_rad = -1.1;
    p.cfo_hz = 250.0;
    p.wiener_rate_rad2_per_s = 5.0;
    p.white_phase_var_rad2 = 0.04;
    p.drift = DriftParams{0.2, 30.0, 0.5};
    auto s = ChainImpairmentState(1, p, make_stream(4, 1), OscillatorMode::reference_locked);
    const auto out = apply_tx_impairments(f.frame, s, f.schedule, 12.5, 0.05);
    REQUIRE(out.size() == f.frame.size());
    for (std::size_t n = 0; n < out.size(); ++n)
        CHECK(std::abs(std::abs(out.samples[n]) - std::abs(f.frame.samples[n])) < 1e-12);
}
