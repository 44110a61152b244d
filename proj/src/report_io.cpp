#include "phasecal/report_io.hpp"

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "phasecal/config_io.hpp"

namespace phasecal {

using nlohmann::json;

namespace {

json cell_to_json(const JitterCell& c) {
    return json{{"rms_c2c_s", c.rms_c2c_s},
                {"mean_phase_rad", c.mean_phase_rad},
                {"skewness", c.skewness},
                {"excess_kurtosis", c.excess_kurtosis}};
}

JitterCell cell_from_json(const json& j) {
    JitterCell c;
    c.rms_c2c_s = j.at("rms_c2c_s").get<double>();
    c.mean_phase_rad = j.at("mean_phase_rad").get<double>();
    c.skewness = j.at("skewness").get<double>();
    c.excess_kurtosis = j.at("excess_kurtosis").get<double>();
    return c;
}

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    return out;
}

constexpr ReceiverKind kKinds[] = {ReceiverKind::local, ReceiverKind::ota};
constexpr CalState kStates[] = {CalState::measured, CalState::calibrated};

}  // namespace

std::string report_to_json(const CalibrationReport& r) {
    json j;
    j["meta"] = {{"scenario", r.meta.scenario},
                 {"seed", r.meta.seed},
                 {"config_hash", hex64(r.meta.config_hash)},
                 {"carrier_freq_hz", r.meta.carrier_freq_hz},
                 {"bandwidth_hz", r.meta.bandwidth_hz},
                 {"sample_rate_hz", r.meta.sample_rate_hz},
                 {"tx_power_dbm", r.meta.tx_power_dbm},
                 {"ota_snr_db", format_double(r.meta.ota_snr_db)},
                 {"num_chains", r.meta.num_chains},
                 {"num_cycles", r.meta.num_cycles},
                 {"smoothing_window", r.meta.smoothing_window},
                 {"settle_cycles", r.meta.settle_cycles}};
    for (auto kind : kKinds)
        for (auto state : kStates)
            j["coherence"][std::string(to_string(kind))][std::string(to_string(state))] =
                r.coherence[static_cast<int>(kind)][static_cast<int>(state)];
    j["chains"] = json::array();
    for (std::size_t m = 0; m < r.chains.size(); ++m) {
        json row{{"chain", m}};
        for (auto kind : kKinds)
            for (auto state : kStates)
                row[std::string(to_string(kind))][std::string(to_string(state))] =
                    cell_to_json(r.chains[m].at(kind, state));
        j["chains"].push_back(std::move(row));
    }
    return j.dump(2) + "\n";
}

CalibrationReport report_from_json(const std::string& text) {
    const json j = json::parse(text);
    CalibrationReport r;
    const json& meta = j.at("meta");
    r.meta.scenario = meta.at("scenario").get<std::string>();
    r.meta.seed = meta.at("seed").get<std::uint64_t>();
    r.meta.config_hash = std::stoull(meta.at("config_hash").get<std::string>(), nullptr, 16);
    r.meta.carrier_freq_hz = meta.at("carrier_freq_hz").get<double>();
    r.meta.bandwidth_hz = meta.at("bandwidth_hz").get<double>();
    r.meta.sample_rate_hz = meta.at("sample_rate_hz").get<double>();
    r.meta.tx_power_dbm = meta.at("tx_power_dbm").get<double>();
    r.meta.ota_snr_db = std::stod(meta.at("ota_snr_db").get<std::string>());
    r.meta.num_chains = meta.at("num_chains").get<std::size_t>();
    r.meta.num_cycles = meta.at("num_cycles").get<std::size_t>();
    r.meta.smoothing_window = meta.at("smoothing_window").get<std::size_t>();
    r.meta.settle_cycles = meta.at("settle_cycles").get<std::size_t>();
    for (auto kind : kKinds)
        for (auto state : kStates)
            r.coherence[static_cast<int>(kind)][static_cast<int>(state)] =
                j.at("coherence").at(std::string(to_string(kind))).at(std::string(to_string(state))).get<double>();
    for (const json& row : j.at("chains")) {
        ChainReport c;
        for (auto kind : kKinds)
            for (auto state : kStates)
                c.at(kind, state) =
                    cell_from_json(row.at(std::string(to_string(kind))).at(std::string(to_string(state))));
        r.chains.push_back(std::move(c));
    }
    return r;
}

void write_report_json(const CalibrationReport& report, const std::filesystem::path& path) {
    auto out = open_out(path);
    out << report_to_json(report);
}

CalibrationReport load_report_json(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return report_from_json(ss.str());
}

void write_trace_csv(const EstimateStreams& streams, double carrier_hz, const std::filesystem::path& path) {
    auto out = open_out(path);
    out << "cycle,chain,receiver,theta_rad,alpha_s,residual_rad\n";
    const std::size_t chains = streams.theta_rad[0].size();
    const std::size_t cycles = chains ? streams.theta_rad[0][0].size() : 0;
    std::string line;
    for (std::size_t l = 0; l < cycles; ++l) {
        for (std::size_t m = 0; m < chains; ++m) {
            for (auto kind : kKinds) {
                const auto r = static_cast<int>(kind);
                const double theta = streams.theta_rad[r][m][l];
                line.clear();
                line += std::to_string(l);
                line += ',';
                line += std::to_string(m);
                line += ',';
                line += to_string(kind);
                line += ',';
                line += format_double(theta);
                line += ',';
                line += format_double(theta / (kTwoPi * carrier_hz));
                line += ',';
                line += format_double(streams.residual_rad[r][m][l]);
                line += '\n';
                out << line;
            }
        }
    }
}

void write_kde_csv(const KdeGrid& grid, const std::filesystem::path& path) {
    auto out = open_out(path);
    out << "x_s,density\n";
    for (std::size_t i = 0; i < grid.x.size(); ++i)
        out << format_double(grid.x[i]) << ',' << format_double(grid.density[i]) << '\n';
}

namespace {

std::string pretty_seconds(double s) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(3);
    const double a = std::abs(s);
    if (a == 0.0) os << 0.0 << " s ";
    else if (a < 1e-12) os << s * 1e15 << " fs";
    else if (a < 1e-9) os << s * 1e12 << " ps";
    else if (a < 1e-6) os << s * 1e9 << " ns";
    else if (a < 1e-3) os << s * 1e6 << " us";
    else os << s << " s ";
    return os.str();
}

}  // namespace

std::string format_report_table(const CalibrationReport& r) {
    std::ostringstream os;
    os << "scenario " << r.meta.scenario << "  seed " << r.meta.seed << "  config " << hex64(r.meta.config_hash)
       << "\n";
    os << "B = " << r.meta.bandwidth_hz / 1e6 << " MHz, fs = " << r.meta.sample_rate_hz / 1e6
       << " MHz, fc = " << r.meta.carrier_freq_hz / 1e9 << " GHz, L = " << r.meta.num_cycles
       << ", window = " << r.meta.smoothing_window << "\n\n";
    os << "RMS cycle-to-cycle jitter\n";
    os << std::left << std::setw(6) << "" << std::setw(28) << "measured" << "calibrated\n";
    os << std::setw(6) << "" << std::setw(14) << "Local" << std::setw(14) << "OTA" << std::setw(14) << "Local"
       << "OTA\n";
    for (std::size_t m = 0; m < r.chains.size(); ++m) {
        os << std::setw(6) << ("TX" + std::to_string(m + 1));
        for (auto state : kStates)
            for (auto kind : kKinds) os << std::setw(14) << pretty_seconds(r.chains[m].at(kind, state).rms_c2c_s);
        os << "\n";
    }
    os << "\ncalibrated Gaussianity (skew / excess kurtosis)\n";
    os << std::fixed << std::setprecision(3);
    for (std::size_t m = 0; m < r.chains.size(); ++m) {
        os << std::setw(6) << ("TX" + std::to_string(m + 1));
        for (auto kind : kKinds) {
            const auto& c = r.chains[m].at(kind, CalState::calibrated);
            os << std::setw(6) << to_string(kind) << std::right << std::setw(8) << c.skewness << " /"
               << std::setw(8) << c.excess_kurtosis << std::left << "   ";
        }
        os << "\n";
    }
    os << "\ncoherence factor  local: " << r.coherence[0][0] << " -> " << r.coherence[0][1]
       << "   ota: " << r.coherence[1][0] << " -> " << r.coherence[1][1] << "\n";
    return os.str();
}

}  // namespace phasecal
