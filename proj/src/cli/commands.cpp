#include "tdmdc/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>

#include <json.hpp>

#include "tdmdc/cli/csv_io.hpp"
#include "tdmdc/cli/report.hpp"
#include "tdmdc/errors.hpp"
#include "tdmdc/modal.hpp"
#include "tdmdc/signals.hpp"

namespace tdmdc::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path output_dir(const RunConfig& config) {
    const fs::path dir = config.get("out");
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) {
        throw InputError("cannot create output directory " + dir.string());
    }
    return dir;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) {
        throw InputError("cannot write " + path.string());
    }
    out << text;
}

void write_json(const fs::path& path, const json& value) { write_text(path, value.dump(2) + "\n"); }

json provenance(const RunConfig& config, const std::string& source) {
    json p;
    p["version"] = kVersion;
    p["config_hash"] = config.hash();
    p["seed"] = config.get_seed();
    p["source"] = source;
    json settings = json::object();
    for (const auto& key : config_keys()) {
        settings[key.name] = config.get(key.name);
    }
    p["config"] = settings;
    return p;
}

std::string fmt(double v) { return std::isfinite(v) ? format_double(v) : std::string("nan"); }

Index channel_index(const RunConfig& config, const std::string& key, Index dofs) {
    const int c = config.get_int(key);
    if (c < 1 || c > dofs) {
        throw ConfigError("config: '" + key + "' must lie in 1.." + std::to_string(dofs));
    }
    return c;
}

Eigen::MatrixXd json_matrix(const json& doc, const char* key, const std::string& source) {
    if (!doc.contains(key) || !doc[key].is_array() || doc[key].empty()) {
        throw InputError(source + ": missing matrix '" + key + "'");
    }
    const auto& rows = doc[key];
    const auto n = static_cast<Index>(rows.size());
    Eigen::MatrixXd m(n, n);
    for (Index i = 0; i < n; ++i) {
        const auto& row = rows[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<Index>(row.size()) != n) {
            throw InputError(source + ": matrix '" + key + "' must be square");
        }
        for (Index j = 0; j < n; ++j) {
            const auto& v = row[static_cast<std::size_t>(j)];
            if (!v.is_number()) {
                throw InputError(source + ": matrix '" + key + "' has a non-numeric entry");
            }
            m(i, j) = v.get<double>();
        }
    }
    return m;
}

std::vector<ModeEstimate> modes_at(const StabilizationDiagram& diagram, int tau) {
    std::vector<ModeEstimate> out;
    for (const auto& e : diagram.entries) {
        if (e.delay_order == tau) {
            out.push_back(e.mode);
        }
    }
    return out;
}

std::vector<double> reference_freqs(const std::vector<ReferenceMode>& reference) {
    std::vector<double> f;
    for (const auto& r : reference) {
        f.push_back(r.freq_hz);
    }
    return f;
}

void write_mac(const fs::path& dir, const Eigen::MatrixXd& m) {
    std::vector<std::string> header{"estimated"};
    for (Index j = 0; j < m.cols(); ++j) {
        header.push_back("ref" + std::to_string(j + 1));
    }
    std::vector<std::vector<std::string>> rows;
    for (Index i = 0; i < m.rows(); ++i) {
        std::vector<std::string> row{std::to_string(i + 1)};
        for (Index j = 0; j < m.cols(); ++j) {
            row.push_back(fmt(m(i, j)));
        }
        rows.push_back(std::move(row));
    }
    write_table(dir / "mac.csv", header, rows);
    write_text(dir / "mac.svg", heatmap_svg(m, "MAC"));
}

void write_diagram(const fs::path& dir, const StabilizationDiagram& diagram,
                   const std::vector<ReferenceMode>& reference, const std::optional<Band>& band) {
    std::vector<std::vector<std::string>> rows;
    PlotSpec freq{"Stabilization diagram", "tau", "frequency (Hz)", {}, {}, 0.0, 1.0};
    PlotSpec damp{"Stabilization diagram", "tau", "damping ratio", {}, {}, 0.0, 1.0};
    double f_max = 0.0;
    double z_max = 0.0;
    for (const auto& e : diagram.entries) {
        rows.push_back({std::to_string(e.delay_order), fmt(e.mode.freq_hz), fmt(e.mode.damping),
                        to_string(e.stability)});
        freq.points.push_back({static_cast<double>(e.delay_order), e.mode.freq_hz, e.stability});
        damp.points.push_back({static_cast<double>(e.delay_order), e.mode.damping, e.stability});
        f_max = std::max(f_max, e.mode.freq_hz);
        if (e.stability == Stability::StableAll) {
            z_max = std::max(z_max, e.mode.damping);
        }
    }
    write_table(dir / "diagram.csv", {"tau", "freq_hz", "damping", "stability"}, rows);
    for (const auto& r : reference) {
        freq.reference_y.push_back(r.freq_hz);
        damp.reference_y.push_back(r.damping);
        z_max = std::max(z_max, r.damping);
        f_max = std::max(f_max, r.freq_hz);
    }
    freq.y_max = band ? band->hi_hz : (f_max > 0.0 ? 1.1 * f_max : 1.0);
    freq.y_min = band ? band->lo_hz : 0.0;
    damp.y_max = z_max > 0.0 ? 1.5 * z_max : 0.1;
    write_text(dir / "diagram_freq.svg", scatter_svg(freq));
    write_text(dir / "diagram_damp.svg", scatter_svg(damp));

    std::vector<std::vector<std::string>> order_rows;
    for (const auto& o : diagram.orders) {
        std::string warnings;
        for (const auto& w : o.warnings) {
            warnings += (warnings.empty() ? "" : "; ") + w;
        }
        std::replace(warnings.begin(), warnings.end(), ',', ' ');
        order_rows.push_back({std::to_string(o.delay_order), std::to_string(o.r), std::to_string(o.p),
                              warnings});
    }
    for (const auto& g : diagram.gaps) {
        std::string msg = g.message;
        std::replace(msg.begin(), msg.end(), ',', ' ');
        order_rows.push_back({std::to_string(g.delay_order), "", "", "failed: " + msg});
    }
    std::sort(order_rows.begin(), order_rows.end(),
              [](const auto& a, const auto& b) { return std::stoi(a[0]) < std::stoi(b[0]); });
    write_table(dir / "orders.csv", {"tau", "r", "p", "notes"}, order_rows);
}

void write_modes(const fs::path& dir, const RunConfig& config, const Dataset& data,
                 const StabilizationDiagram& diagram) {
    if (config.get("format") != "json" && config.get("format") != "csv") {
        throw ConfigError("config: format must be json or csv");
    }
    const OrderSummary& last = diagram.orders.back();
    const auto modes = modes_at(diagram, last.delay_order);
    if (config.get("format") == "csv") {
        std::vector<std::vector<std::string>> rows;
        for (std::size_t i = 0; i < modes.size(); ++i) {
            const auto& m = modes[i];
            rows.push_back({std::to_string(i + 1), fmt(m.freq_hz), fmt(m.damping), fmt(m.s.real()),
                            fmt(m.s.imag()), fmt(m.mu.real()), fmt(m.mu.imag()),
                            m.negative_damping ? "true" : "false"});
        }
        write_table(dir / "modes.csv",
                    {"mode", "freq_hz", "damping", "s_re", "s_im", "mu_re", "mu_im", "negative_damping"},
                    rows);
    }
    json doc;
    doc["provenance"] = provenance(config, data.source);
    doc["tau_a"] = last.delay_order;
    doc["tau_b"] = config.get_int("tau-b");
    doc["r"] = last.r;
    doc["p"] = last.p;
    doc["warnings"] = last.warnings;
    json list = json::array();
    for (const auto& m : modes) {
        list.push_back(mode_to_json(m));
    }
    doc["modes"] = list;
    json gaps = json::array();
    for (const auto& g : diagram.gaps) {
        gaps.push_back({{"tau", g.delay_order}, {"error", g.message}});
    }
    doc["failed_orders"] = gaps;
    if (config.get("format") == "json") {
        write_json(dir / "modes.json", doc);
    } else {
        doc.erase("modes");
        write_json(dir / "provenance.json", doc);
    }

    std::vector<Eigen::VectorXcd> shapes;
    for (const auto& m : modes) {
        shapes.push_back(m.shape);
    }
    if (!shapes.empty()) {
        write_shapes(dir / "shapes.csv", shapes);
    }
    if (!data.reference.empty() && !shapes.empty() &&
        shapes.front().size() == data.reference.front().shape.size()) {
        std::vector<Eigen::VectorXcd> ref;
        for (const auto& r : data.reference) {
            ref.push_back(r.shape);
        }
        write_mac(dir, mac_matrix(shapes, ref));
    }
}

StabilizationDiagram run_sweep(const Dataset& data, const SweepOptions& options) {
    auto diagram = stabilization_sweep(data.response, data.excitation, options);
    if (diagram.orders.empty()) {
        const std::string why = diagram.gaps.empty() ? "no delay order was fitted" : diagram.gaps.front().message;
        throw NumericalError("identification failed at every delay order: " + why);
    }
    return diagram;
}

std::vector<std::string> summary_cells(const std::vector<double>& values) {
    if (values.empty()) {
        return {"", "", "", "", ""};
    }
    const Summary s = summarize(values);
    return {fmt(s.mean), fmt(s.std), fmt(s.median), fmt(s.q1), fmt(s.q3)};
}

}  // namespace

LtiSecondOrderModel load_model(const RunConfig& config) {
    const std::string name = config.get("model");
    if (name == "builtin-6dof") {
        return build_6dof();
    }
    std::ifstream in(name);
    if (!in) {
        throw ConfigError("config: model must be builtin-6dof or a readable JSON file, got '" + name + "'");
    }
    json doc;
    try {
        in >> doc;
    } catch (const json::parse_error& e) {
        throw InputError(name + ": " + e.what());
    }
    LtiSecondOrderModel model{json_matrix(doc, "mass", name), json_matrix(doc, "damping", name),
                              json_matrix(doc, "stiffness", name)};
    model.validate();
    return model;
}

TimeSeries build_excitation(const RunConfig& config, Index dofs) {
    const double rate = config.get_double("fs");
    const double duration = config.get_double("duration");
    if (!(rate > 0.0) || !std::isfinite(rate) || !(duration > 0.0) || !std::isfinite(duration)) {
        throw ConfigError("config: fs and duration must be positive");
    }
    const double dt = 1.0 / rate;
    const auto samples = static_cast<Index>(std::llround(duration * rate));
    if (samples < 4) {
        throw ConfigError("config: duration * fs gives fewer than 4 samples");
    }
    const std::string type = config.get("excitation-type");
    if (type == "impulse") {
        const Index channel = channel_index(config, "impulse-channel", dofs);
        const int at = config.get_int("impulse-sample");
        if (at < 0 || at >= samples) {
            throw ConfigError("config: impulse-sample outside the record");
        }
        return impulse(dofs, channel, config.get_double("impulse-amplitude"), at, samples, dt);
    }
    if (type == "chirp") {
        const Index channel = channel_index(config, "chirp-channel", dofs);
        const double f0 = config.get_double("chirp-f0");
        const double f1 = config.get_double("chirp-f1");
        if (!(f0 > 0.0) || !(f1 > f0) || f1 > 0.5 * rate) {
            throw ConfigError("config: chirp needs 0 < chirp-f0 < chirp-f1 <= fs / 2");
        }
        const Chirp c = log_chirp(f0, f1, duration, dt, config.get_double("chirp-amplitude"));
        return spread_to_channels(c.signal, dofs, channel);
    }
    throw ConfigError("config: excitation-type must be impulse or chirp");
}

Dataset load_dataset(const RunConfig& config, std::optional<double> snr_db,
                     std::optional<std::uint64_t> seed) {
    const bool from_file = !config.get("response").empty();
    if (!snr_db) {
        const auto levels = config.get_list("snr-db");
        if (levels.size() != 1) {
            throw ConfigError("config: snr-db must be a single value here");
        }
        snr_db = levels.front();
    }
    const std::uint64_t noise_seed = seed ? *seed : config.get_seed();
    if (from_file) {
        if (config.is_set("model") || config.is_set("excitation-type")) {
            throw ConfigError("config: give either response files or a simulation spec, not both");
        }
        Dataset data{read_time_series(fs::path(config.get("response"))), std::nullopt, std::nullopt, {},
                     config.get("response")};
        if (!config.get("excitation").empty()) {
            data.excitation = read_time_series(fs::path(config.get("excitation")));
            if (std::abs(data.excitation->dt() - data.response.dt()) > 1e-9 * data.response.dt()) {
                throw InputError("excitation and response use different sampling intervals");
            }
        }
        if (std::isfinite(*snr_db)) {
            data.response = add_noise(data.response, *snr_db, noise_seed);
        }
        return data;
    }
    if (!config.get("excitation").empty()) {
        throw ConfigError("config: excitation file given without a response file");
    }
    LtiSecondOrderModel model = load_model(config);
    TimeSeries u = build_excitation(config, model.dofs());
    TimeSeries y = simulate(model, u);
    if (std::isfinite(*snr_db)) {
        y = add_noise(y, *snr_db, noise_seed);
    }
    Dataset data{std::move(y), std::move(u), model, analytic_modes(model), "simulated:" + config.get("model")};
    return data;
}

void prepare(Dataset& data, const RunConfig& config) {
    if (!config.get("resample-hz").empty()) {
        const double target = config.get_double("resample-hz");
        data.response = resample(data.response, target);
        if (data.excitation) {
            data.excitation = resample(*data.excitation, target);
        }
    }
    if (config.get_bool("pad")) {
        if (!data.excitation) {
            throw ConfigError("config: pad requires an excitation");
        }
        auto padded = zero_pad(data.response, *data.excitation, config.get_int("tau-max"),
                               config.get_int("tau-b"));
        data.response = std::move(padded.first);
        data.excitation = std::move(padded.second);
    }
}

void cmd_simulate(const RunConfig& config) {
    if (!config.get("response").empty()) {
        throw ConfigError("config: simulate takes a simulation spec, not response files");
    }
    Dataset data = load_dataset(config);
    prepare(data, config);
    const fs::path dir = output_dir(config);
    write_time_series(dir / "excitation.csv", *data.excitation);
    write_time_series(dir / "response.csv", data.response);
    std::vector<Eigen::VectorXcd> shapes;
    json modes = json::array();
    for (const auto& r : data.reference) {
        shapes.push_back(r.shape);
        modes.push_back({{"freq_hz", r.freq_hz}, {"damping", r.damping}});
    }
    write_shapes(dir / "reference_shapes.csv", shapes);
    write_json(dir / "reference_modes.json",
               {{"provenance", provenance(config, data.source)}, {"modes", modes}});
}

void cmd_identify(const RunConfig& config) {
    Dataset data = load_dataset(config);
    prepare(data, config);
    const SweepOptions options = sweep_options(config);
    const auto diagram = run_sweep(data, options);
    const fs::path dir = output_dir(config);
    write_modes(dir, config, data, diagram);
    write_diagram(dir, diagram, data.reference, options.band);
}

void cmd_sweep(const RunConfig& config) {
    Dataset data = load_dataset(config);
    prepare(data, config);
    const SweepOptions options = sweep_options(config);
    const auto diagram = run_sweep(data, options);
    const fs::path dir = output_dir(config);
    write_modes(dir, config, data, diagram);
    write_diagram(dir, diagram, data.reference, options.band);

    const auto ref = reference_freqs(data.reference);
    SweepStatistics stats;
    try {
        stats = sweep_statistics(diagram, config.get_double("match-tol"), ref);
    } catch (const InputError& e) {
        throw NumericalError(std::string("no stable mode clusters: ") + e.what());
    }
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < stats.modes.size(); ++i) {
        const auto& m = stats.modes[i];
        rows.push_back({std::to_string(i + 1), fmt(m.center_hz), std::to_string(m.freq.count),
                        fmt(m.freq.mean), fmt(m.freq.std), fmt(m.freq.median), fmt(m.freq.q1),
                        fmt(m.freq.q3), fmt(m.damping.mean), fmt(m.damping.std), fmt(m.damping.median),
                        fmt(m.damping.q1), fmt(m.damping.q3), fmt(m.ci_width_freq), fmt(m.ci_width_damp)});
    }
    write_table(dir / "statistics.csv",
                {"mode", "center_hz", "count", "freq_mean", "freq_std", "freq_median", "freq_q1",
                 "freq_q3", "damp_mean", "damp_std", "damp_median", "damp_q1", "damp_q3", "ci_freq",
                 "ci_damp"},
                rows);
}

void cmd_noise_study(const RunConfig& config) {
    if (!config.get("response").empty()) {
        throw ConfigError("config: noise-study needs a simulation spec as ground truth");
    }
    const auto levels = config.get_list("snr-db");
    if (levels.empty()) {
        throw ConfigError("config: snr-db is empty");
    }
    const int trials = config.get_int("trials");
    if (trials < 1) {
        throw ConfigError("config: trials must be at least 1");
    }
    const std::uint64_t seed = config.get_seed();
    const double match_tol = config.get_double("match-tol");
    const SweepOptions options = sweep_options(config);
    std::vector<int> taus;
    for (int tau = options.tau_min; tau <= options.tau_max; tau += options.step) {
        taus.push_back(tau);
    }

    const LtiSecondOrderModel model = load_model(config);
    const TimeSeries excitation = build_excitation(config, model.dofs());
    const TimeSeries clean = simulate(model, excitation);
    const auto reference = analytic_modes(model);
    const auto ref_freq = reference_freqs(reference);
    const std::size_t n_modes = reference.size();

    // samples[level][tau][mode] -> (freq, damping) over trials
    using Cell = std::vector<std::pair<double, double>>;
    std::vector<std::vector<std::vector<Cell>>> samples(
        levels.size(), std::vector<std::vector<Cell>>(taus.size(), std::vector<Cell>(n_modes)));
    std::vector<std::vector<int>> missing(levels.size(), std::vector<int>(n_modes, 0));

    for (std::size_t l = 0; l < levels.size(); ++l) {
        for (int t = 0; t < trials; ++t) {
            Dataset data{add_noise(clean, levels[l], seed + static_cast<std::uint64_t>(t)), excitation,
                         model, reference, "simulated:" + config.get("model")};
            prepare(data, config);
            const auto diagram = stabilization_sweep(data.response, data.excitation, options);
            for (std::size_t k = 0; k < taus.size(); ++k) {
                const auto modes = modes_at(diagram, taus[k]);
                const auto match = match_modes(modes, ref_freq, match_tol);
                for (std::size_t j = 0; j < n_modes; ++j) {
                    if (match[j] < 0) {
                        ++missing[l][j];
                        continue;
                    }
                    const auto& m = modes[static_cast<std::size_t>(match[j])];
                    samples[l][k][j].emplace_back(m.freq_hz, m.damping);
                }
            }
        }
    }

    const fs::path dir = output_dir(config);
    std::vector<std::vector<std::string>> rows;
    std::vector<std::vector<std::string>> ci_rows;
    for (std::size_t l = 0; l < levels.size(); ++l) {
        for (std::size_t j = 0; j < n_modes; ++j) {
            std::vector<double> pooled_f;
            std::vector<double> pooled_z;
            std::vector<double> std_f;
            std::vector<double> std_z;
            for (std::size_t k = 0; k < taus.size(); ++k) {
                std::vector<double> f;
                std::vector<double> z;
                for (const auto& [fv, zv] : samples[l][k][j]) {
                    f.push_back(fv);
                    z.push_back(zv);
                }
                pooled_f.insert(pooled_f.end(), f.begin(), f.end());
                pooled_z.insert(pooled_z.end(), z.begin(), z.end());
                std::vector<std::string> row{fmt(levels[l]), std::to_string(taus[k]), std::to_string(j + 1),
                                             std::to_string(f.size())};
                const auto cf = summary_cells(f);
                const auto cz = summary_cells(z);
                row.insert(row.end(), cf.begin(), cf.end());
                row.insert(row.end(), cz.begin(), cz.end());
                if (f.empty()) {
                    row.insert(row.end(), {"", "", "", ""});
                } else {
                    const Summary sf = summarize(f);
                    const Summary sz = summarize(z);
                    std_f.push_back(sf.std);
                    std_z.push_back(sz.std);
                    row.push_back(fmt(100.0 * std::abs(sf.mean - reference[j].freq_hz) / reference[j].freq_hz));
                    row.push_back(fmt(100.0 * std::abs(sz.mean - reference[j].damping) / reference[j].damping));
                    row.push_back(fmt(1.96 * sf.std));
                    row.push_back(fmt(1.96 * sz.std));
                }
                rows.push_back(std::move(row));
            }
            std::vector<std::string> ci{fmt(levels[l]), std::to_string(j + 1), fmt(reference[j].freq_hz),
                                        fmt(reference[j].damping), std::to_string(pooled_f.size()),
                                        std::to_string(missing[l][j])};
            if (pooled_f.empty()) {
                ci.insert(ci.end(), {"", "", "", "", "", ""});
            } else {
                const double mf = summarize(pooled_f).mean;
                const double mz = summarize(pooled_z).mean;
                ci.push_back(fmt(mf));
                ci.push_back(fmt(mz));
                ci.push_back(fmt(100.0 * std::abs(mf - reference[j].freq_hz) / reference[j].freq_hz));
                ci.push_back(fmt(100.0 * std::abs(mz - reference[j].damping) / reference[j].damping));
                ci.push_back(fmt(averaged_ci_width(std_f)));
                ci.push_back(fmt(averaged_ci_width(std_z)));
            }
            ci_rows.push_back(std::move(ci));
        }
    }
    write_table(dir / "statistics.csv",
                {"snr_db", "tau", "mode", "found", "freq_mean", "freq_std", "freq_median", "freq_q1",
                 "freq_q3", "damp_mean", "damp_std", "damp_median", "damp_q1", "damp_q3",
                 "freq_err_pct", "damp_err_pct", "ci_freq", "ci_damp"},
                rows);
    write_table(dir / "ci.csv",
                {"snr_db", "mode", "ref_freq_hz", "ref_damping", "found", "missing", "freq_mean",
                 "damp_mean", "freq_err_pct", "damp_err_pct", "avg_ci_freq", "avg_ci_damp"},
                ci_rows);

    const auto slope_taus = config.get_list("slope-taus");
    if (!slope_taus.empty()) {
        NoiseStudyOptions study;
        study.snr_db = config.get_double("slope-snr-db");
        for (double t : slope_taus) {
            if (t < 1.0 || t != std::floor(t)) {
                throw ConfigError("config: slope-taus must be positive integers");
            }
            study.taus.push_back(static_cast<int>(t));
        }
        study.trials = trials;
        study.seed = seed;
        study.tau_b = options.tau_b;
        study.fit = options.fit;
        study.window = options.window;
        study.match_tol = match_tol;
        const auto result = noise_scaling_study(model, excitation, study);
        std::ofstream out(dir / "slope.csv");
        if (!out) {
            throw InputError("cannot write " + (dir / "slope.csv").string());
        }
        out << "# slope = " << (result.slope_valid ? fmt(result.slope_damping_1) : std::string("nan"))
            << '\n';
        out << "tau";
        for (std::size_t j = 0; j < result.reference_freq.size(); ++j) {
            out << ",std_damping_" << (j + 1);
        }
        for (std::size_t j = 0; j < result.reference_freq.size(); ++j) {
            out << ",std_freq_" << (j + 1);
        }
        out << ",failures,excluded\n";
        for (const auto& row : result.rows) {
            out << row.tau;
            for (double v : row.std_damping) {
                out << ',' << fmt(v);
            }
            for (double v : row.std_freq) {
                out << ',' << fmt(v);
            }
            out << ',' << row.failures << ',' << (row.excluded ? "true" : "false") << '\n';
        }
    }
    write_json(dir / "provenance.json", provenance(config, "simulated:" + config.get("model")));
}

void cmd_mac(const RunConfig& config) {
    if (config.get("estimated").empty() || config.get("reference").empty()) {
        throw ConfigError("config: mac needs both estimated and reference shape files");
    }
    const auto estimated = read_shapes(fs::path(config.get("estimated")));
    const auto reference = read_shapes(fs::path(config.get("reference")));
    const Eigen::MatrixXd m = mac_matrix(estimated, reference);
    write_mac(output_dir(config), m);
}

int exit_code_for(const std::exception& error) {
    if (dynamic_cast<const ConfigError*>(&error)) {
        return 4;
    }
    if (dynamic_cast<const NumericalError*>(&error)) {
        return 3;
    }
    if (dynamic_cast<const InputError*>(&error)) {
        return 2;
    }
    return 1;
}

}  // namespace tdmdc::cli
