#pragma once

#include "qirm/model.hpp"

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

namespace qirm {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Flat `key = value` text, one ScenarioConfig field per key. Blank lines and
// lines starting with '#' are ignored. Keys absent from the file keep their
// defaults; unknown keys and malformed values throw ConfigError.
ScenarioConfig parse_config(std::istream& in);
ScenarioConfig load_config(const std::filesystem::path& path);

// Writes every field in a stable order with round-trip precision.
void write_config(std::ostream& out, const ScenarioConfig& config);
void save_config(const std::filesystem::path& path, const ScenarioConfig& config);

// Applies one `key`/`value` pair; used by the parser and by sweeps.
void set_config_value(ScenarioConfig& config, const std::string& key, const std::string& value);

// Shortest decimal form that parses back to the same double.
std::string format_double(double value);

}  // namespace qirm
