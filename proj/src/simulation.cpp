#include "phasecal/simulation.hpp"

#include <chrono>
#include <cmath>
#include <fstream>

#include "phasecal/channel.hpp"
#include "phasecal/config_io.hpp"
#include "phasecal/impairments.hpp"
#include "phasecal/receiver.hpp"
#include "phasecal/report_io.hpp"
#include "phasecal/rng.hpp"
#include "phasecal/scenarios.hpp"
#include "phasecal/waveform.hpp"

namespace phasecal {

namespace {

SystemConfig resolve(const SimulationOptions& o) {
    SystemConfig c = find_scenario(o.scenario).apply(o.config);
    if (o.seed) c.rng_seed = *o.seed;
    if (o.cycles) c.num_cycles = *o.cycles;
    return validate(std::move(c));
}

std::uint16_t link_port(std::uint16_t base, std::uint16_t offset) {
    return base == 0 ? 0 : static_cast<std::uint16_t>(base + offset);
}

}  // namespace

SimulationResult run_simulation(const SimulationOptions& options) {
    SimulationResult result;
    result.config = resolve(options);
    const SystemConfig& cfg = result.config;
    const std::size_t chains = cfg.num_chains;
    const std::size_t cycles = cfg.num_cycles;
    const double fc = cfg.carrier_freq_hz;

    const ComplexSignal chirp = generate_chirp(cfg.bandwidth_hz, cfg.sample_rate_hz, cfg.num_chirp_samples);
    const TdmaFrame frame = build_frame(cfg, chirp);
    const OtaChannelParams ota = make_ota_params(cfg);

    std::vector<ChainImpairmentState> tx;
    tx.reserve(chains);
    for (std::size_t m = 0; m < chains; ++m)
        tx.emplace_back(m, cfg.chains[m], make_stream(cfg.rng_seed, streams::kChainBase + m), cfg.oscillator_mode);
    RxChainState rx_local(cfg.rx_local, make_stream(cfg.rng_seed, streams::kRxLocal));
    RxChainState rx_ota(cfg.rx_ota, make_stream(cfg.rng_seed, streams::kRxOta));
    std::mt19937_64 noise_rng = make_stream(cfg.rng_seed, streams::kOtaNoise);

    const ReceiverSetup setup_local{&frame.schedule, &chirp, fc, ReceiverKind::local, cfg.estimator};
    const ReceiverSetup setup_ota{&frame.schedule, &chirp, fc, ReceiverKind::ota, cfg.estimator};

    std::array<SmoothedCalibrator, 2> calibrators{SmoothedCalibrator(chains, cfg.smoothing_window),
                                                  SmoothedCalibrator(chains, cfg.smoothing_window)};
    std::array<std::unique_ptr<FeedbackLink>, 2> links{make_link(options.transport, link_port(options.port, 0)),
                                                       make_link(options.transport, link_port(options.port, 1))};
    const auto timeout = options.transport == TransportKind::udp ? std::chrono::milliseconds(500)
                                                                 : std::chrono::milliseconds(0);

    result.streams = EstimateStreams(chains, cycles);
    std::vector<ComplexSignal> tx_frames(chains);

    for (std::size_t l = 0; l < cycles; ++l) {
        const double t0 = static_cast<double>(l) * cfg.cycle_interval_s;
        for (std::size_t m = 0; m < chains; ++m)
            tx_frames[m] = apply_tx_impairments(frame.chains[m], tx[m], frame.schedule, t0, cfg.cycle_interval_s);

        const ComplexSignal r_local = propagate_local(tx_frames);
        const ComplexSignal r_ota = propagate_ota(tx_frames, ota, fc, noise_rng);
        const std::array<std::vector<PhaseEstimate>, 2> estimates{run_receiver(r_local, rx_local, setup_local, l),
                                                                  run_receiver(r_ota, rx_ota, setup_ota, l)};

        const auto timestamp_us = static_cast<std::uint64_t>(std::llround(t0 * 1e6));
        for (int r = 0; r < 2; ++r) {
            const auto kind = static_cast<ReceiverKind>(r);
            auto& cal = calibrators[r];
            for (const auto& e : estimates[r]) {
                result.streams.theta_rad[r][e.chain][l] = e.theta_rad;
                result.streams.residual_rad[r][e.chain][l] = wrap_phase(e.theta_rad - cal.precoding(e.chain));
                links[r]->send(FeedbackMessage{static_cast<std::uint8_t>(e.chain), static_cast<std::uint32_t>(l),
                                               e.theta_rad, timestamp_us});
            }
            // TX controller side: a message that never arrives leaves p_m unchanged.
            for (std::size_t k = 0; k < estimates[r].size(); ++k) {
                const auto msg = links[r]->receive(timeout);
                if (!msg) {
                    result.lost_messages += estimates[r].size() - k;
                    break;
                }
                if (msg->chain_index >= chains) continue;
                cal.update(PhaseEstimate::make(msg->chain_index, msg->cycle_index, msg->theta_rad, fc, kind));
            }
        }
    }

    result.report = build_report(result.streams, cfg, options.scenario, cfg.rng_seed);
    return result;
}

ExportedFiles export_traces(const SimulationResult& result, const std::filesystem::path& dir, bool export_kde) {
    std::filesystem::create_directories(dir);
    ExportedFiles files;
    files.report_json = dir / "report.json";
    files.trace_csv = dir / "trace.csv";
    files.config = dir / "config.cfg";
    write_report_json(result.report, files.report_json);
    write_trace_csv(result.streams, result.config.carrier_freq_hz, files.trace_csv);
    {
        std::ofstream out(files.config, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write '" + files.config.string() + "'");
        out << to_config_text(result.config);
    }
    if (export_kde) {
        const auto kde_dir = dir / "kde";
        std::filesystem::create_directories(kde_dir);
        const std::size_t from = result.report.meta.settle_cycles;
        for (std::size_t m = 0; m < result.report.chains.size(); ++m) {
            for (auto kind : {ReceiverKind::local, ReceiverKind::ota}) {
                for (auto state : {CalState::measured, CalState::calibrated}) {
                    const auto& s = result.report.chains[m].at(kind, state).samples_s;
                    const std::size_t skip = state == CalState::calibrated ? from : 0;
                    std::vector<double> used(s.begin() + static_cast<std::ptrdiff_t>(skip), s.end());
                    const auto path = kde_dir / ("kde_tx" + std::to_string(m + 1) + "_" +
                                                 std::string(to_string(kind)) + "_" +
                                                 std::string(to_string(state)) + ".csv");
                    try {
                        write_kde_csv(KernelDensity(std::move(used)).evaluate_grid(), path);
                        files.kde_csv.push_back(path);
                    } catch (const std::invalid_argument&) {
                        // degenerate (all-equal) jitter has no density to export
                    }
                }
            }
        }
    }
    return files;
}

SimulationResult run_manifest(const RunManifest& manifest, ExportedFiles* files) {
    SimulationResult result = run_simulation(manifest.options);
    ExportedFiles f = export_traces(result, manifest.output_dir, manifest.export_kde);
    if (files) *files = std::move(f);
    return result;
}

}  // namespace phasecal
