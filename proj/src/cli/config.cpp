#include "tdmdc/cli/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "tdmdc/errors.hpp"

namespace tdmdc::cli {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_number(const std::string& key, const std::string& text) {
    const std::string t = trim(text);
    if (t == "inf" || t == "+inf") {
        return std::numeric_limits<double>::infinity();
    }
    double v = 0.0;
    const auto* end = t.data() + t.size();
    const auto [ptr, ec] = std::from_chars(t.data(), end, v);
    if (t.empty() || ec != std::errc() || ptr != end) {
        throw ConfigError("config: '" + key + "' expects a number, got '" + text + "'");
    }
    return v;
}

}  // namespace

const std::vector<ConfigKey>& config_keys() {
    static const std::vector<ConfigKey> keys = {
        {"response", "", "response CSV (t,ch1,...); selects file input"},
        {"excitation", "", "excitation CSV aligned with the responses"},
        {"model", "builtin-6dof", "builtin-6dof or a JSON file with mass/damping/stiffness"},
        {"excitation-type", "impulse", "simulated excitation: impulse or chirp"},
        {"fs", "4", "simulation sampling rate (Hz)"},
        {"duration", "1000", "simulation length (s)"},
        {"impulse-channel", "1", "DoF receiving the impulse (1-based)"},
        {"impulse-amplitude", "1", "impulse amplitude (N)"},
        {"impulse-sample", "0", "sample index of the impulse"},
        {"chirp-f0", "0.01", "chirp start frequency (Hz)"},
        {"chirp-f1", "2", "chirp end frequency (Hz)"},
        {"chirp-amplitude", "1", "chirp amplitude (N)"},
        {"chirp-channel", "1", "DoF receiving the chirp (1-based)"},
        {"snr-db", "inf", "response SNR in dB; a list or lo:hi:step for noise-study"},
        {"seed", "1", "noise seed (trial t uses seed + t)"},
        {"trials", "1", "Monte-Carlo trials per SNR level"},
        {"tau-min", "2", "smallest output delay order"},
        {"tau-max", "2", "largest output delay order"},
        {"tau-step", "1", "delay order increment"},
        {"tau-b", "2", "input delay order"},
        {"rank-r", "", "fixed output-side rank (empty: singular-entropy rule)"},
        {"rank-p", "", "fixed input-side rank (empty: singular-entropy rule)"},
        {"entropy-threshold", "1e-3", "singular-entropy threshold"},
        {"svd-route", "auto", "auto, direct or gram"},
        {"window", "all", "snapshot columns: all or free-decay"},
        {"pad", "false", "zero-pad tau_a / tau_b samples at both ends before embedding"},
        {"band", "", "keep modes inside LO:HI Hz"},
        {"resample-hz", "", "resample responses and excitation to this rate first"},
        {"freq-tol", "0.01", "relative frequency tolerance for stability flags"},
        {"damp-tol", "0.05", "relative damping tolerance for stability flags"},
        {"match-tol", "0.02", "relative frequency tolerance for clustering statistics"},
        {"slope-taus", "50,100,200,400", "delay orders for the dispersion slope table"},
        {"slope-snr-db", "20", "SNR of the dispersion slope study"},
        {"estimated", "", "estimated shapes CSV (mac)"},
        {"reference", "", "reference shapes CSV (mac)"},
        {"threads", "1", "worker threads for delay sweeps"},
        {"out", "tdmdc-out", "output directory"},
        {"format", "json", "mode table format: json or csv"},
    };
    return keys;
}

RunConfig::RunConfig() {
    for (const auto& k : config_keys()) {
        values_[k.name] = k.default_value;
        explicit_[k.name] = false;
    }
}

void RunConfig::load_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file " + path.string());
    }
    std::stringstream buf;
    buf << in.rdbuf();
    load_text(buf.str(), path.string());
}

void RunConfig::load_text(const std::string& text, const std::string& source) {
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        const std::string body = trim(hash == std::string::npos ? line : line.substr(0, hash));
        if (body.empty()) {
            continue;
        }
        const auto eq = body.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(source + ":" + std::to_string(line_no) + ": expected key = value");
        }
        const std::string key = trim(body.substr(0, eq));
        try {
            set(key, trim(body.substr(eq + 1)));
        } catch (const ConfigError& e) {
            throw ConfigError(source + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
}

void RunConfig::set(const std::string& key, const std::string& value) {
    const auto it = values_.find(key);
    if (it == values_.end()) {
        throw ConfigError("unknown config key '" + key + "'");
    }
    it->second = value;
    explicit_[key] = true;
}

const std::string& RunConfig::get(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) {
        throw ConfigError("unknown config key '" + key + "'");
    }
    return it->second;
}

bool RunConfig::is_set(const std::string& key) const {
    get(key);
    return explicit_.at(key);
}

double RunConfig::get_double(const std::string& key) const { return parse_number(key, get(key)); }

int RunConfig::get_int(const std::string& key) const {
    const double v = get_double(key);
    if (!std::isfinite(v) || v != std::floor(v) || std::abs(v) > 1e9) {
        throw ConfigError("config: '" + key + "' expects an integer");
    }
    return static_cast<int>(v);
}

std::uint64_t RunConfig::get_seed() const {
    const std::string t = trim(get("seed"));
    std::uint64_t v = 0;
    const auto* end = t.data() + t.size();
    const auto [ptr, ec] = std::from_chars(t.data(), end, v);
    if (t.empty() || ec != std::errc() || ptr != end) {
        throw ConfigError("config: 'seed' expects a non-negative integer");
    }
    return v;
}

bool RunConfig::get_bool(const std::string& key) const {
    const std::string v = trim(get(key));
    if (v == "true" || v == "1" || v == "yes") {
        return true;
    }
    if (v == "false" || v == "0" || v == "no" || v.empty()) {
        return false;
    }
    throw ConfigError("config: '" + key + "' expects true or false");
}

std::vector<double> RunConfig::get_list(const std::string& key) const {
    const std::string v = trim(get(key));
    std::vector<double> out;
    if (v.empty()) {
        return out;
    }
    if (v.find(':') != std::string::npos) {
        std::vector<double> parts;
        std::stringstream ss(v);
        std::string item;
        while (std::getline(ss, item, ':')) {
            parts.push_back(parse_number(key, item));
        }
        if (parts.size() != 3 || !(parts[2] > 0.0) || parts[1] < parts[0]) {
            throw ConfigError("config: '" + key + "' range must be lo:hi:step with step > 0");
        }
        for (double x = parts[0]; x <= parts[1] + 1e-9 * std::abs(parts[2]); x += parts[2]) {
            out.push_back(x);
        }
        return out;
    }
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        out.push_back(parse_number(key, item));
    }
    return out;
}

std::string RunConfig::canonical() const {
    std::string out;
    for (const auto& [k, v] : values_) {
        out += k + "=" + v + "\n";
    }
    return out;
}

std::string RunConfig::hash() const {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : canonical()) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

FitOptions fit_options(const RunConfig& config) {
    FitOptions fit;
    const bool has_r = !trim(config.get("rank-r")).empty();
    const bool has_p = !trim(config.get("rank-p")).empty();
    if (has_r != has_p) {
        throw ConfigError("config: set both rank-r and rank-p, or neither");
    }
    if (has_r) {
        const int r = config.get_int("rank-r");
        const int p = config.get_int("rank-p");
        if (r < 1 || p < 1) {
            throw ConfigError("config: ranks must be at least 1");
        }
        fit.ranks = RankPolicy::fixed(r, p);
    } else {
        const double threshold = config.get_double("entropy-threshold");
        if (!(threshold > 0.0)) {
            throw ConfigError("config: entropy-threshold must be positive");
        }
        fit.ranks = RankPolicy::auto_ranks(threshold);
    }
    const std::string route = config.get("svd-route");
    if (route == "auto") {
        fit.route = SvdRoute::Auto;
    } else if (route == "direct") {
        fit.route = SvdRoute::Direct;
    } else if (route == "gram") {
        fit.route = SvdRoute::Gram;
    } else {
        throw ConfigError("config: svd-route must be auto, direct or gram");
    }
    return fit;
}

std::optional<Band> band(const RunConfig& config) {
    const std::string text = trim(config.get("band"));
    if (text.empty()) {
        return std::nullopt;
    }
    const auto colon = text.find(':');
    if (colon == std::string::npos) {
        throw ConfigError("config: band must be LO:HI");
    }
    Band b{parse_number("band", text.substr(0, colon)), parse_number("band", text.substr(colon + 1))};
    if (!(b.lo_hz >= 0.0) || !(b.hi_hz > b.lo_hz)) {
        throw ConfigError("config: band needs 0 <= LO < HI");
    }
    return b;
}

SweepOptions sweep_options(const RunConfig& config) {
    SweepOptions o;
    o.tau_min = config.get_int("tau-min");
    o.tau_max = config.get_int("tau-max");
    o.step = config.get_int("tau-step");
    o.tau_b = config.get_int("tau-b");
    if (o.tau_min < 1 || o.tau_max < o.tau_min || o.step < 1 || o.tau_b < 1) {
        throw ConfigError("config: require 1 <= tau-min <= tau-max, tau-step >= 1, tau-b >= 1");
    }
    o.fit = fit_options(config);
    o.band = band(config);
    const std::string window = config.get("window");
    if (window == "all") {
        o.window = SnapshotWindow::All;
    } else if (window == "free-decay") {
        o.window = SnapshotWindow::FreeDecay;
    } else {
        throw ConfigError("config: window must be all or free-decay");
    }
    o.freq_tol = config.get_double("freq-tol");
    o.damp_tol = config.get_double("damp-tol");
    if (!(o.freq_tol > 0.0) || !(o.damp_tol > 0.0)) {
        throw ConfigError("config: stability tolerances must be positive");
    }
    const int threads = config.get_int("threads");
    if (threads < 1) {
        throw ConfigError("config: threads must be at least 1");
    }
    o.threads = static_cast<unsigned>(threads);
    return o;
}

}  // namespace tdmdc::cli
