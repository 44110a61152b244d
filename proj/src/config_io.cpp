#include "phasecal/config_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace phasecal {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_double(std::string_view key, std::string_view v) {
    double out = 0.0;
    const auto* end = v.data() + v.size();
    auto [ptr, ec] = std::from_chars(v.data(), end, out);
    if (ec != std::errc{} || ptr != end)
        throw ConfigError("type mismatch for '" + std::string(key) + "': expected a number, got '" +
                          std::string(v) + "'");
    return out;
}

std::uint64_t parse_uint(std::string_view key, std::string_view v) {
    std::uint64_t out = 0;
    const auto* end = v.data() + v.size();
    auto [ptr, ec] = std::from_chars(v.data(), end, out);
    if (ec != std::errc{} || ptr != end)
        throw ConfigError("type mismatch for '" + std::string(key) +
                          "': expected a non-negative integer, got '" + std::string(v) + "'");
    return out;
}

bool parse_bool(std::string_view key, std::string_view v) {
    if (v == "true") return true;
    if (v == "false") return false;
    throw ConfigError("type mismatch for '" + std::string(key) + "': expected true or false, got '" +
                      std::string(v) + "'");
}

using TopSetter = std::function<void(SystemConfig&, std::string_view key, std::string_view value)>;
using ChainSetter = std::function<void(ChainParams&, std::string_view key, std::string_view value)>;
using RxSetter = std::function<void(RxParams&, std::string_view key, std::string_view value)>;

#define PHASECAL_DOUBLE(field) [](auto& c, std::string_view k, std::string_view v) { c.field = parse_double(k, v); }
#define PHASECAL_UINT(field)                                                  \
    [](auto& c, std::string_view k, std::string_view v) {                     \
        c.field = static_cast<decltype(c.field)>(parse_uint(k, v));           \
    }

const std::map<std::string, TopSetter, std::less<>>& top_setters() {
    static const std::map<std::string, TopSetter, std::less<>> table = {
        {"carrier_freq_hz", PHASECAL_DOUBLE(carrier_freq_hz)},
        {"bandwidth_hz", PHASECAL_DOUBLE(bandwidth_hz)},
        {"sample_rate_hz", PHASECAL_DOUBLE(sample_rate_hz)},
        {"num_chains", PHASECAL_UINT(num_chains)},
        {"num_chirp_samples", PHASECAL_UINT(num_chirp_samples)},
        {"guard_samples", PHASECAL_UINT(guard_samples)},
        {"num_cycles", PHASECAL_UINT(num_cycles)},
        {"cycle_interval_s", PHASECAL_DOUBLE(cycle_interval_s)},
        {"element_spacing_m",
         [](SystemConfig& c, std::string_view k, std::string_view v) {
             c.element_spacing_m = parse_double(k, v);
         }},
        {"rx_distance_m", PHASECAL_DOUBLE(rx_distance_m)},
        {"rx_angle_rad", PHASECAL_DOUBLE(rx_angle_rad)},
        {"tx_power_dbm", PHASECAL_DOUBLE(tx_power_dbm)},
        {"ota_snr_db", PHASECAL_DOUBLE(ota_snr_db)},
        {"rng_seed", PHASECAL_UINT(rng_seed)},
        {"smoothing_window", PHASECAL_UINT(smoothing_window)},
        {"oscillator_mode",
         [](SystemConfig& c, std::string_view, std::string_view v) {
             c.oscillator_mode = oscillator_mode_from_string(v);
         }},
        {"estimator",
         [](SystemConfig& c, std::string_view, std::string_view v) {
             c.estimator = estimator_kind_from_string(v);
         }},
        {"delay_model",
         [](SystemConfig& c, std::string_view, std::string_view v) {
             c.delay_model = delay_model_from_string(v);
         }},
        {"channel_gain_mag", PHASECAL_DOUBLE(channel_gain_mag)},
        {"channel_gain_phase_rad", PHASECAL_DOUBLE(channel_gain_phase_rad)},
        {"ota_geometry_phase",
         [](SystemConfig& c, std::string_view k, std::string_view v) {
             c.ota_geometry_phase = parse_bool(k, v);
         }},
    };
    return table;
}

const std::map<std::string, ChainSetter, std::less<>>& chain_setters() {
    static const std::map<std::string, ChainSetter, std::less<>> table = {
        {"theta_rf_rad", PHASECAL_DOUBLE(theta_rf_rad)},
        {"cfo_hz", PHASECAL_DOUBLE(cfo_hz)},
        {"wiener_rate_rad2_per_s", PHASECAL_DOUBLE(wiener_rate_rad2_per_s)},
        {"white_phase_var_rad2", PHASECAL_DOUBLE(white_phase_var_rad2)},
        {"drift_amplitude_rad", PHASECAL_DOUBLE(drift.amplitude_rad)},
        {"drift_tau_s", PHASECAL_DOUBLE(drift.tau_s)},
        {"drift_slope_rad_per_s", PHASECAL_DOUBLE(drift.slope_rad_per_s)},
    };
    return table;
}

const std::map<std::string, RxSetter, std::less<>>& rx_setters() {
    static const std::map<std::string, RxSetter, std::less<>> table = {
        {"phi_rf_rad", PHASECAL_DOUBLE(phi_rf_rad)},
        {"cfo_hz", PHASECAL_DOUBLE(cfo_hz)},
        {"osc_white_var_rad2", PHASECAL_DOUBLE(osc_white_var_rad2)},
    };
    return table;
}

#undef PHASECAL_DOUBLE
#undef PHASECAL_UINT

}  // namespace

const std::vector<std::string>& required_config_keys() {
    static const std::vector<std::string> keys = {
        "carrier_freq_hz", "bandwidth_hz",     "sample_rate_hz", "num_chains",
        "num_chirp_samples", "num_cycles",     "cycle_interval_s", "rx_distance_m",
        "rx_angle_rad",
    };
    return keys;
}

SystemConfig parse_config(std::string_view text) {
    SystemConfig cfg;
    cfg.chains.clear();
    std::map<std::size_t, ChainParams> chains;
    std::set<std::string> seen;

    enum class Section { top, chain, rx_local, rx_ota } section = Section::top;
    std::size_t chain_index = 0;
    std::string section_name;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;

        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        const std::string where = "line " + std::to_string(line_no) + ": ";
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError(where + "unterminated section header");
            section_name = std::string(trim(line.substr(1, line.size() - 2)));
            if (section_name == "rx.local") {
                section = Section::rx_local;
            } else if (section_name == "rx.ota") {
                section = Section::rx_ota;
            } else if (section_name.starts_with("chain.")) {
                section = Section::chain;
                chain_index = static_cast<std::size_t>(parse_uint(section_name, section_name.substr(6)));
                chains.try_emplace(chain_index);
            } else {
                throw ConfigError(where + "unknown section [" + section_name + "]");
            }
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ConfigError(where + "expected 'key = value'");
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) throw ConfigError(where + "expected 'key = value'");

        const std::string qualified =
            section == Section::top ? std::string(key) : section_name + "." + std::string(key);
        if (!seen.insert(qualified).second) throw ConfigError(where + "duplicate key '" + qualified + "'");

        switch (section) {
            case Section::top: {
                const auto it = top_setters().find(key);
                if (it == top_setters().end()) throw ConfigError(where + "unknown key '" + qualified + "'");
                it->second(cfg, key, value);
                break;
            }
            case Section::chain: {
                const auto it = chain_setters().find(key);
                if (it == chain_setters().end()) throw ConfigError(where + "unknown key '" + qualified + "'");
                it->second(chains[chain_index], key, value);
                break;
            }
            case Section::rx_local:
            case Section::rx_ota: {
                const auto it = rx_setters().find(key);
                if (it == rx_setters().end()) throw ConfigError(where + "unknown key '" + qualified + "'");
                it->second(section == Section::rx_local ? cfg.rx_local : cfg.rx_ota, key, value);
                break;
            }
        }
    }

    std::vector<std::string> missing;
    for (const auto& k : required_config_keys())
        if (!seen.contains(k)) missing.push_back(k);
    if (!missing.empty()) {
        std::string msg = "missing required keys:";
        for (const auto& k : missing) msg += " " + k;
        throw ConfigError(msg);
    }

    cfg.chains.assign(cfg.num_chains, ChainParams{});
    for (const auto& [m, params] : chains) {
        if (m >= cfg.num_chains)
            throw ConfigError("section [chain." + std::to_string(m) + "] exceeds num_chains = " +
                              std::to_string(cfg.num_chains));
        cfg.chains[m] = params;
    }
    return validate(std::move(cfg));
}

SystemConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

std::string to_config_text(const SystemConfig& c) {
    std::ostringstream os;
    auto kv = [&os](std::string_view k, const std::string& v) { os << k << " = " << v << '\n'; };
    kv("carrier_freq_hz", format_double(c.carrier_freq_hz));
    kv("bandwidth_hz", format_double(c.bandwidth_hz));
    kv("sample_rate_hz", format_double(c.sample_rate_hz));
    kv("num_chains", std::to_string(c.num_chains));
    kv("num_chirp_samples", std::to_string(c.num_chirp_samples));
    kv("guard_samples", std::to_string(c.guard_samples));
    kv("num_cycles", std::to_string(c.num_cycles));
    kv("cycle_interval_s", format_double(c.cycle_interval_s));
    if (c.element_spacing_m) kv("element_spacing_m", format_double(*c.element_spacing_m));
    kv("rx_distance_m", format_double(c.rx_distance_m));
    kv("rx_angle_rad", format_double(c.rx_angle_rad));
    kv("tx_power_dbm", format_double(c.tx_power_dbm));
    kv("ota_snr_db", format_double(c.ota_snr_db));
    kv("rng_seed", std::to_string(c.rng_seed));
    kv("smoothing_window", std::to_string(c.smoothing_window));
    kv("oscillator_mode", std::string(to_string(c.oscillator_mode)));
    kv("estimator", std::string(to_string(c.estimator)));
    kv("delay_model", std::string(to_string(c.delay_model)));
    kv("channel_gain_mag", format_double(c.channel_gain_mag));
    kv("channel_gain_phase_rad", format_double(c.channel_gain_phase_rad));
    kv("ota_geometry_phase", c.ota_geometry_phase ? "true" : "false");
    for (std::size_t m = 0; m < c.chains.size(); ++m) {
        const auto& ch = c.chains[m];
        os << "\n[chain." << m << "]\n";
        kv("theta_rf_rad", format_double(ch.theta_rf_rad));
        kv("cfo_hz", format_double(ch.cfo_hz));
        kv("wiener_rate_rad2_per_s", format_double(ch.wiener_rate_rad2_per_s));
        kv("white_phase_var_rad2", format_double(ch.white_phase_var_rad2));
        kv("drift_amplitude_rad", format_double(ch.drift.amplitude_rad));
        kv("drift_tau_s", format_double(ch.drift.tau_s));
        kv("drift_slope_rad_per_s", format_double(ch.drift.slope_rad_per_s));
    }
    for (const auto& [name, rx] : {std::pair{"rx.local", c.rx_local}, std::pair{"rx.ota", c.rx_ota}}) {
        os << "\n[" << name << "]\n";
        kv("phi_rf_rad", format_double(rx.phi_rf_rad));
        kv("cfo_hz", format_double(rx.cfo_hz));
        kv("osc_white_var_rad2", format_double(rx.osc_white_var_rad2));
    }
    return os.str();
}

std::uint64_t config_hash(const SystemConfig& config) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const unsigned char ch : to_config_text(config)) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace phasecal
