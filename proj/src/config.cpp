#include "qirm/config.hpp"

#include <array>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <variant>

namespace qirm {

namespace {

using Field = std::variant<std::uint32_t ScenarioConfig::*, std::uint64_t ScenarioConfig::*,
                           double ScenarioConfig::*, bool ScenarioConfig::*, Strategy ScenarioConfig::*>;

struct Key {
    const char* name;
    Field field;
};

// Order here is the order written to disk.
const std::array kKeys{
    Key{"n_nodes", &ScenarioConfig::n_nodes},
    Key{"k_cache_slots", &ScenarioConfig::k_cache_slots},
    Key{"beta", &ScenarioConfig::beta},
    Key{"a_min", &ScenarioConfig::a_min},
    Key{"alpha", &ScenarioConfig::alpha},
    Key{"t_window", &ScenarioConfig::t_window},
    Key{"fanout", &ScenarioConfig::fanout},
    Key{"normalize_weights", &ScenarioConfig::normalize_weights},
    Key{"warmup_fraction", &ScenarioConfig::warmup_fraction},
    Key{"catalog_size", &ScenarioConfig::catalog_size},
    Key{"zipf_s", &ScenarioConfig::zipf_s},
    Key{"query_rate", &ScenarioConfig::query_rate},
    Key{"content_size_min", &ScenarioConfig::content_size_min},
    Key{"content_size_max", &ScenarioConfig::content_size_max},
    Key{"duration", &ScenarioConfig::duration},
    Key{"seed", &ScenarioConfig::seed},
    Key{"strategy", &ScenarioConfig::strategy},
    Key{"bw_min", &ScenarioConfig::bw_min},
    Key{"bw_max", &ScenarioConfig::bw_max},
    Key{"sp_min", &ScenarioConfig::sp_min},
    Key{"sp_max", &ScenarioConfig::sp_max},
    Key{"mz_min", &ScenarioConfig::mz_min},
    Key{"mz_max", &ScenarioConfig::mz_max},
    Key{"al_min", &ScenarioConfig::al_min},
    Key{"al_max", &ScenarioConfig::al_max},
    Key{"uplink_ratio", &ScenarioConfig::uplink_ratio},
    Key{"control_packet_kb", &ScenarioConfig::control_packet_kb},
    Key{"packet_size_kb", &ScenarioConfig::packet_size_kb},
    Key{"report_interval", &ScenarioConfig::report_interval},
    Key{"drain_horizon", &ScenarioConfig::drain_horizon},
    Key{"flood_width", &ScenarioConfig::flood_width},
};

std::string trim(const std::string& s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(const std::string& key, const std::string& value)
{
    T out{};
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || ptr != value.data() + value.size()) {
        throw ConfigError("bad value for '" + key + "': '" + value + "'");
    }
    return out;
}

}  // namespace

std::string format_double(double value)
{
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), ptr);
}

void set_config_value(ScenarioConfig& config, const std::string& key, const std::string& value)
{
    for (const auto& k : kKeys) {
        if (key != k.name) continue;
        std::visit(
            [&](auto member) {
                using T = std::remove_cvref_t<decltype(config.*member)>;
                if constexpr (std::is_same_v<T, bool>) {
                    if (value == "true" || value == "1") {
                        config.*member = true;
                    } else if (value == "false" || value == "0") {
                        config.*member = false;
                    } else {
                        throw ConfigError("bad value for '" + key + "': '" + value + "'");
                    }
                } else if constexpr (std::is_same_v<T, Strategy>) {
                    auto s = parse_strategy(value);
                    if (!s) throw ConfigError("unknown strategy '" + value + "'");
                    config.*member = *s;
                } else {
                    config.*member = parse_number<T>(key, value);
                }
            },
            k.field);
        return;
    }
    throw ConfigError("unknown config key '" + key + "'");
}

ScenarioConfig parse_config(std::istream& in)
{
    ScenarioConfig config;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto text = trim(line);
        if (text.empty() || text.front() == '#') continue;
        const auto eq = text.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value'");
        }
        try {
            set_config_value(config, trim(text.substr(0, eq)), trim(text.substr(eq + 1)));
        } catch (const ConfigError& e) {
            throw ConfigError("line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return config;
}

ScenarioConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    return parse_config(in);
}

void write_config(std::ostream& out, const ScenarioConfig& config)
{
    for (const auto& k : kKeys) {
        out << k.name << " = ";
        std::visit(
            [&](auto member) {
                using T = std::remove_cvref_t<decltype(config.*member)>;
                const auto& v = config.*member;
                if constexpr (std::is_same_v<T, bool>) {
                    out << (v ? "true" : "false");
                } else if constexpr (std::is_same_v<T, Strategy>) {
                    out << to_string(v);
                } else if constexpr (std::is_same_v<T, double>) {
                    out << format_double(v);
                } else {
                    out << v;
                }
            },
            k.field);
        out << '\n';
    }
}

void save_config(const std::filesystem::path& path, const ScenarioConfig& config)
{
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write config file " + path.string());
    write_config(out, config);
}

}  // namespace qirm
