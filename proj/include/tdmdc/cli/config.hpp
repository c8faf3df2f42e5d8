#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tdmdc/modal.hpp"

namespace tdmdc::cli {

struct ConfigKey {
    std::string name;
    std::string default_value;
    std::string help;
};

/// Every recognised key. Each is also accepted as a `--name` command-line flag.
const std::vector<ConfigKey>& config_keys();

/// Flat key = value settings. Precedence: defaults, then the config file, then flags.
class RunConfig {
 public:
    RunConfig();

    /// Reads `key = value` lines; '#' starts a comment. Unknown keys and malformed lines
    /// throw ConfigError naming the line.
    void load_file(const std::filesystem::path& path);
    void load_text(const std::string& text, const std::string& source = "<config>");

    /// Throws ConfigError for an unknown key.
    void set(const std::string& key, const std::string& value);
    const std::string& get(const std::string& key) const;
    bool is_set(const std::string& key) const;  ///< set by file or flag, not a default

    double get_double(const std::string& key) const;
    int get_int(const std::string& key) const;
    std::uint64_t get_seed() const;
    bool get_bool(const std::string& key) const;
    std::vector<double> get_list(const std::string& key) const;  ///< "a,b,c" or "lo:hi:step"

    /// Canonical `key=value` text of every key, in key order.
    std::string canonical() const;
    /// FNV-1a hash of canonical(), hex encoded.
    std::string hash() const;

 private:
    std::map<std::string, std::string> values_;
    std::map<std::string, bool> explicit_;
};

/// Sweep and fit settings shared by the identification commands.
SweepOptions sweep_options(const RunConfig& config);
FitOptions fit_options(const RunConfig& config);
std::optional<Band> band(const RunConfig& config);

}  // namespace tdmdc::cli
