#include "phasecal/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "phasecal/config_io.hpp"
#include "phasecal/kernels.hpp"
#include "phasecal/receiver.hpp"

namespace phasecal {

double phase_to_jitter(double theta_rad, double carrier_hz) {
    if (!(carrier_hz > 0)) throw std::invalid_argument("phase_to_jitter: carrier must be positive");
    return theta_rad / (kTwoPi * carrier_hz);
}

double rms_c2c_jitter(std::span<const double> alpha) {
    if (alpha.size() < 2) throw std::invalid_argument("rms_c2c_jitter: need at least two samples");
    double acc = 0.0;
    for (std::size_t l = 1; l < alpha.size(); ++l) {
        const double d = alpha[l] - alpha[l - 1];
        acc += d * d;
    }
    return std::sqrt(acc / static_cast<double>(alpha.size() - 1));
}

double coherence_factor(std::span<const double> residual_phases_rad) {
    if (residual_phases_rad.empty()) throw std::invalid_argument("coherence_factor: need M >= 1");
    cplx sum{0.0, 0.0};
    for (double r : residual_phases_rad) sum += std::polar(1.0, r);
    return std::min(1.0, std::abs(sum) / static_cast<double>(residual_phases_rad.size()));
}

double sample_mean(std::span<const double> x) {
    if (x.empty()) throw std::invalid_argument("sample_mean: empty input");
    double s = 0.0;
    for (double v : x) s += v;
    return s / static_cast<double>(x.size());
}

double sample_stddev(std::span<const double> x) {
    if (x.size() < 2) throw std::invalid_argument("sample_stddev: need at least two samples");
    const double mu = sample_mean(x);
    double s = 0.0;
    for (double v : x) s += (v - mu) * (v - mu);
    return std::sqrt(s / static_cast<double>(x.size() - 1));
}

namespace {

struct Moments {
    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
};

Moments central_moments(std::span<const double> x) {
    const double mu = sample_mean(x);
    Moments m;
    for (double v : x) {
        const double d = v - mu;
        const double d2 = d * d;
        m.m2 += d2;
        m.m3 += d2 * d;
        m.m4 += d2 * d2;
    }
    const auto n = static_cast<double>(x.size());
    m.m2 /= n;
    m.m3 /= n;
    m.m4 /= n;
    return m;
}

}  // namespace

double skewness(std::span<const double> x) {
    const Moments m = central_moments(x);
    if (m.m2 <= 0.0) return 0.0;
    return m.m3 / std::pow(m.m2, 1.5);
}

double excess_kurtosis(std::span<const double> x) {
    const Moments m = central_moments(x);
    if (m.m2 <= 0.0) return 0.0;
    return m.m4 / (m.m2 * m.m2) - 3.0;
}

double silverman_bandwidth(std::span<const double> samples) {
    if (samples.size() < 2) throw std::invalid_argument("kde: need at least two samples");
    return 1.06 * sample_stddev(samples) * std::pow(static_cast<double>(samples.size()), -0.2);
}

KernelDensity::KernelDensity(std::vector<double> samples, std::optional<double> bandwidth)
    : samples_(std::move(samples)) {
    if (samples_.size() < 2) throw std::invalid_argument("kde: need at least two samples");
    bandwidth_ = bandwidth ? *bandwidth : silverman_bandwidth(samples_);
    if (!(bandwidth_ > 0.0) || !std::isfinite(bandwidth_)) throw std::invalid_argument("kde: zero bandwidth");
}

double KernelDensity::operator()(double x) const {
    double out = 0.0;
    kernels::serial::kde_evaluate(std::span<const double>(&x, 1), samples_, bandwidth_,
                                  std::span<double>(&out, 1));
    return out;
}

KdeGrid KernelDensity::evaluate_grid(double pad_bandwidths, std::size_t points) const {
    const auto [lo_it, hi_it] = std::minmax_element(samples_.begin(), samples_.end());
    const double lo = *lo_it - pad_bandwidths * bandwidth_;
    const double hi = *hi_it + pad_bandwidths * bandwidth_;
    if (points == 0) {
        const double wanted = std::ceil((hi - lo) / (bandwidth_ / 4.0)) + 1.0;
        points = static_cast<std::size_t>(std::clamp(wanted, 512.0, static_cast<double>(1 << 20)));
    }
    if (points < 2) throw std::invalid_argument("kde: grid needs at least two points");
    KdeGrid g;
    g.x.resize(points);
    g.density.resize(points);
    const double step = (hi - lo) / static_cast<double>(points - 1);
    for (std::size_t i = 0; i < points; ++i) g.x[i] = lo + step * static_cast<double>(i);
    kernels::kde_evaluate(g.x, samples_, bandwidth_, g.density);
    return g;
}

double trapezoid(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw ShapeError("trapezoid: length mismatch");
    double s = 0.0;
    for (std::size_t i = 1; i < x.size(); ++i) s += 0.5 * (x[i] - x[i - 1]) * (y[i] + y[i - 1]);
    return s;
}

// ---------------------------------------------------------------- report

std::string_view to_string(CalState s) { return s == CalState::measured ? "measured" : "calibrated"; }

EstimateStreams::EstimateStreams(std::size_t num_chains, std::size_t num_cycles) {
    for (int r = 0; r < 2; ++r) {
        theta_rad[r].assign(num_chains, std::vector<double>(num_cycles, 0.0));
        residual_rad[r].assign(num_chains, std::vector<double>(num_cycles, 0.0));
    }
}

std::size_t settle_cycles(std::size_t window, std::size_t num_cycles) {
    return num_cycles < 2 ? 0 : std::min(window, num_cycles - 2);
}

namespace {

double circular_mean(std::span<const double> phases) {
    cplx sum{0.0, 0.0};
    for (double p : phases) sum += std::polar(1.0, p);
    return std::arg(sum);
}

JitterCell make_cell(std::vector<double> alpha, std::span<const double> phases, std::size_t from) {
    JitterCell cell;
    const std::span<const double> used = std::span<const double>(alpha).subspan(from);
    cell.rms_c2c_s = rms_c2c_jitter(used);
    cell.skewness = skewness(used);
    cell.excess_kurtosis = excess_kurtosis(used);
    cell.mean_phase_rad = circular_mean(phases.subspan(from));
    cell.samples_s = std::move(alpha);
    return cell;
}

}  // namespace

CalibrationReport build_report(const EstimateStreams& streams, const SystemConfig& config,
                               const std::string& scenario, std::uint64_t seed) {
    const std::size_t chains = config.num_chains;
    const std::size_t cycles = config.num_cycles;
    for (int r = 0; r < 2; ++r) {
        if (streams.theta_rad[r].size() != chains || streams.residual_rad[r].size() != chains)
            throw std::invalid_argument("build_report: incomplete stream (chain count)");
        for (std::size_t m = 0; m < chains; ++m)
            if (streams.theta_rad[r][m].size() != cycles || streams.residual_rad[r][m].size() != cycles)
                throw std::invalid_argument("build_report: incomplete stream for chain " + std::to_string(m));
    }

    CalibrationReport rep;
    rep.meta.scenario = scenario;
    rep.meta.seed = seed;
    rep.meta.config_hash = config_hash(config);
    rep.meta.carrier_freq_hz = config.carrier_freq_hz;
    rep.meta.bandwidth_hz = config.bandwidth_hz;
    rep.meta.sample_rate_hz = config.sample_rate_hz;
    rep.meta.tx_power_dbm = config.tx_power_dbm;
    rep.meta.ota_snr_db = config.ota_snr_db;
    rep.meta.num_chains = chains;
    rep.meta.num_cycles = cycles;
    rep.meta.smoothing_window = config.smoothing_window;
    rep.meta.settle_cycles = settle_cycles(config.smoothing_window, cycles);

    const double fc = config.carrier_freq_hz;
    rep.chains.resize(chains);
    for (std::size_t m = 0; m < chains; ++m) {
        for (const auto kind : {ReceiverKind::local, ReceiverKind::ota}) {
            const auto r = static_cast<int>(kind);
            const auto& theta = streams.theta_rad[r][m];
            const auto& resid = streams.residual_rad[r][m];

            std::vector<double> track = unwrap_phases(theta);
            for (auto& v : track) v = phase_to_jitter(v, fc);
            rep.chains[m].at(kind, CalState::measured) = make_cell(std::move(track), theta, 0);

            std::vector<double> alpha(resid.size());
            std::transform(resid.begin(), resid.end(), alpha.begin(),
                           [fc](double v) { return phase_to_jitter(v, fc); });
            rep.chains[m].at(kind, CalState::calibrated) =
                make_cell(std::move(alpha), resid, rep.meta.settle_cycles);
        }
    }

    std::vector<double> across(chains);
    for (int r = 0; r < 2; ++r) {
        for (int s = 0; s < 2; ++s) {
            const auto& src = s == 0 ? streams.theta_rad[r] : streams.residual_rad[r];
            const std::size_t from = s == 0 ? 0 : rep.meta.settle_cycles;
            double acc = 0.0;
            for (std::size_t l = from; l < cycles; ++l) {
                for (std::size_t m = 0; m < chains; ++m) across[m] = src[m][l];
                acc += coherence_factor(across);
            }
            rep.coherence[r][s] = acc / static_cast<double>(cycles - from);
        }
    }
    return rep;
}

}  // namespace phasecal
