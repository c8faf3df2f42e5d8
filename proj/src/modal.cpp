#include "tdmdc/modal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <thread>

#include "tdmdc/embedding.hpp"
#include "tdmdc/errors.hpp"
#include "tdmdc/shape.hpp"
#include "tdmdc/signals.hpp"

namespace tdmdc {

namespace {

bool keep_eigenvalue(std::complex<double> mu) {
    return std::abs(mu) > 1e-12 && mu.imag() > 0.0;
}

ModeEstimate mode_from_mu(std::complex<double> mu, double dt) {
    ModeEstimate m;
    m.mu = mu;
    m.s = std::log(mu) / dt;
    const double mag = std::abs(m.s);
    m.freq_hz = mag / (2.0 * std::numbers::pi);
    m.damping = -m.s.real() / mag;
    m.negative_damping = m.damping < 0.0;
    return m;
}

bool in_band(const ModeEstimate& m, const std::optional<Band>& band) {
    return !band || (m.freq_hz >= band->lo_hz && m.freq_hz <= band->hi_hz);
}

void sort_by_frequency(std::vector<ModeEstimate>& modes) {
    std::stable_sort(modes.begin(), modes.end(), [](const ModeEstimate& a, const ModeEstimate& b) {
        return a.freq_hz < b.freq_hz;
    });
}

double relative_change(double now, double before) {
    const double diff = std::abs(now - before);
    if (now == 0.0) {
        return diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    }
    return diff / std::abs(now);
}

}  // namespace

std::vector<ModeEstimate> to_modes(const DmdcModel& model, std::optional<Band> band) {
    if (!(model.dt > 0.0)) {
        throw InputError("to_modes: model dt must be positive");
    }
    const Index n = model.spec.n;
    const Index r = model.eigvals.size();
    Eigen::VectorXcd amplitudes = Eigen::VectorXcd::Zero(r);
    if (r > 0 && model.initial_snapshot.size() == model.modes.rows()) {
        amplitudes = model.modes.colPivHouseholderQr().solve(
            model.initial_snapshot.cast<std::complex<double>>());
    }
    std::vector<ModeEstimate> out;
    for (Index i = 0; i < r; ++i) {
        if (!keep_eigenvalue(model.eigvals(i))) {
            continue;
        }
        ModeEstimate m = mode_from_mu(model.eigvals(i), model.dt);
        if (!in_band(m, band)) {
            continue;
        }
        m.shape = normalize_shape(model.modes.col(i).head(n));
        m.delay_order = model.spec.tau_a;
        m.amplitude = amplitudes(i);
        out.push_back(std::move(m));
    }
    sort_by_frequency(out);
    return out;
}

std::vector<ModeEstimate> modes_from_eigenvalues(std::span<const std::complex<double>> mu,
                                                 double dt) {
    if (!(dt > 0.0)) {
        throw InputError("modes_from_eigenvalues: dt must be positive");
    }
    std::vector<ModeEstimate> out;
    for (const auto& v : mu) {
        if (keep_eigenvalue(v)) {
            out.push_back(mode_from_mu(v, dt));
        }
    }
    sort_by_frequency(out);
    return out;
}

double mac(const Eigen::VectorXcd& phi, const Eigen::VectorXcd& psi) {
    if (phi.size() != psi.size()) {
        throw InputError("mac: shape vectors differ in length");
    }
    const double a = phi.squaredNorm();
    const double b = psi.squaredNorm();
    if (!(a > 0.0) || !(b > 0.0)) {
        throw InputError("mac: zero shape vector");
    }
    const double value = std::norm(phi.dot(psi)) / (a * b);
    return std::clamp(value, 0.0, 1.0);
}

Eigen::MatrixXd mac_matrix(std::span<const Eigen::VectorXcd> estimated,
                           std::span<const Eigen::VectorXcd> reference) {
    if (estimated.empty() || reference.empty()) {
        throw InputError("mac_matrix: shape lists must be nonempty");
    }
    Eigen::MatrixXd out(static_cast<Index>(estimated.size()), static_cast<Index>(reference.size()));
    for (std::size_t i = 0; i < estimated.size(); ++i) {
        for (std::size_t j = 0; j < reference.size(); ++j) {
            out(static_cast<Index>(i), static_cast<Index>(j)) = mac(estimated[i], reference[j]);
        }
    }
    return out;
}

const char* to_string(Stability s) {
    switch (s) {
        case Stability::New:
            return "new";
        case Stability::StableFreq:
            return "stable_freq";
        case Stability::StableAll:
            return "stable_all";
    }
    return "new";
}

void classify_stability(StabilizationDiagram& diagram) {
    auto& entries = diagram.entries;
    std::stable_sort(entries.begin(), entries.end(), [](const DiagramEntry& a, const DiagramEntry& b) {
        if (a.delay_order != b.delay_order) {
            return a.delay_order < b.delay_order;
        }
        return a.mode.freq_hz < b.mode.freq_hz;
    });
    std::size_t prev_begin = 0;
    std::size_t prev_end = 0;
    std::size_t i = 0;
    while (i < entries.size()) {
        std::size_t j = i;
        while (j < entries.size() && entries[j].delay_order == entries[i].delay_order) {
            ++j;
        }
        for (std::size_t k = i; k < j; ++k) {
            DiagramEntry& e = entries[k];
            e.stability = Stability::New;
            std::size_t best = prev_end;
            double best_df = std::numeric_limits<double>::infinity();
            double best_dz = std::numeric_limits<double>::infinity();
            for (std::size_t c = prev_begin; c < prev_end; ++c) {
                const double df = std::abs(entries[c].mode.freq_hz - e.mode.freq_hz);
                const double dz = std::abs(entries[c].mode.damping - e.mode.damping);
                if (df < best_df || (df == best_df && dz < best_dz)) {
                    best = c;
                    best_df = df;
                    best_dz = dz;
                }
            }
            if (best == prev_end) {
                continue;
            }
            const ModeEstimate& before = entries[best].mode;
            if (relative_change(e.mode.freq_hz, before.freq_hz) < diagram.freq_tol) {
                e.stability = relative_change(e.mode.damping, before.damping) < diagram.damp_tol
                                  ? Stability::StableAll
                                  : Stability::StableFreq;
            }
        }
        prev_begin = i;
        prev_end = j;
        i = j;
    }
}

StabilizationDiagram stabilization_sweep(const TimeSeries& outputs,
                                         const std::optional<TimeSeries>& inputs,
                                         const SweepOptions& options) {
    if (options.tau_min < 1 || options.tau_max < options.tau_min || options.step < 1) {
        throw ConfigError("sweep: require 1 <= tau_min <= tau_max and step >= 1");
    }
    std::vector<int> taus;
    for (int t = options.tau_min; t <= options.tau_max; t += options.step) {
        taus.push_back(t);
    }
    struct Slot {
        std::vector<ModeEstimate> modes;
        OrderSummary summary;
        std::string error;
    };
    std::vector<Slot> slots(taus.size());
    auto work = [&](std::size_t idx) {
        try {
            SnapshotSet snaps = build_snapshots(outputs, inputs, taus[idx], options.tau_b);
            if (options.window == SnapshotWindow::FreeDecay) {
                snaps = snaps.free_decay();
            }
            const DmdcModel model = fit(snaps, options.fit);
            slots[idx].modes = to_modes(model, options.band);
            slots[idx].summary = {taus[idx], model.ranks.r, model.ranks.p, model.warnings};
        } catch (const Error& e) {
            slots[idx].error = e.what();
        }
    };
    const unsigned threads = std::max(1u, std::min<unsigned>(options.threads,
                                                             static_cast<unsigned>(taus.size())));
    if (threads == 1) {
        for (std::size_t i = 0; i < taus.size(); ++i) {
            work(i);
        }
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < threads; ++w) {
            pool.emplace_back([&, w] {
                for (std::size_t i = w; i < taus.size(); i += threads) {
                    work(i);
                }
            });
        }
        for (auto& t : pool) {
            t.join();
        }
    }

    StabilizationDiagram diagram;
    diagram.freq_tol = options.freq_tol;
    diagram.damp_tol = options.damp_tol;
    for (std::size_t i = 0; i < taus.size(); ++i) {
        if (!slots[i].error.empty()) {
            diagram.gaps.push_back({taus[i], slots[i].error});
            continue;
        }
        diagram.orders.push_back(std::move(slots[i].summary));
        for (auto& m : slots[i].modes) {
            m.delay_order = taus[i];
            diagram.entries.push_back({taus[i], std::move(m), Stability::New});
        }
    }
    classify_stability(diagram);
    return diagram;
}

Summary summarize(std::span<const double> values) {
    if (values.empty()) {
        throw InputError("summarize: no values");
    }
    std::vector<double> v(values.begin(), values.end());
    std::sort(v.begin(), v.end());
    const auto n = v.size();
    auto quantile = [&](double q) {
        const double h = q * static_cast<double>(n - 1);
        const auto lo = static_cast<std::size_t>(std::floor(h));
        const std::size_t hi = std::min(lo + 1, n - 1);
        return v[lo] + (h - static_cast<double>(lo)) * (v[hi] - v[lo]);
    };
    Summary s;
    s.count = n;
    double sum = 0.0;
    for (double x : v) {
        sum += x;
    }
    s.mean = sum / static_cast<double>(n);
    double ss = 0.0;
    for (double x : v) {
        ss += (x - s.mean) * (x - s.mean);
    }
    s.std = n > 1 ? std::sqrt(ss / static_cast<double>(n - 1)) : 0.0;
    s.median = quantile(0.5);
    s.q1 = quantile(0.25);
    s.q3 = quantile(0.75);
    s.min = v.front();
    s.max = v.back();
    return s;
}

SweepStatistics sweep_statistics(const StabilizationDiagram& diagram, double tol,
                                 std::span<const double> reference_hz) {
    if (!(tol > 0.0)) {
        throw ConfigError("sweep_statistics: tolerance must be positive");
    }
    std::vector<std::vector<const ModeEstimate*>> clusters;
    std::vector<double> centers;
    if (!reference_hz.empty()) {
        clusters.resize(reference_hz.size());
        centers.assign(reference_hz.begin(), reference_hz.end());
        for (const auto& e : diagram.entries) {
            std::size_t best = reference_hz.size();
            double best_rel = tol;
            for (std::size_t j = 0; j < reference_hz.size(); ++j) {
                const double rel = std::abs(e.mode.freq_hz - reference_hz[j]) / reference_hz[j];
                if (rel <= best_rel) {
                    best_rel = rel;
                    best = j;
                }
            }
            if (best < reference_hz.size()) {
                clusters[best].push_back(&e.mode);
            }
        }
    } else {
        std::vector<const ModeEstimate*> sorted;
        for (const auto& e : diagram.entries) {
            sorted.push_back(&e.mode);
        }
        std::stable_sort(sorted.begin(), sorted.end(), [](const ModeEstimate* a, const ModeEstimate* b) {
            return a->freq_hz < b->freq_hz;
        });
        double running = 0.0;
        for (const ModeEstimate* m : sorted) {
            if (!clusters.empty() && std::abs(m->freq_hz - running) <= tol * running) {
                clusters.back().push_back(m);
                running += (m->freq_hz - running) / static_cast<double>(clusters.back().size());
            } else {
                clusters.push_back({m});
                running = m->freq_hz;
            }
        }
        for (const auto& c : clusters) {
            double sum = 0.0;
            for (const auto* m : c) {
                sum += m->freq_hz;
            }
            centers.push_back(sum / static_cast<double>(c.size()));
        }
    }
    SweepStatistics stats;
    for (std::size_t i = 0; i < clusters.size(); ++i) {
        if (clusters[i].empty()) {
            continue;
        }
        std::vector<double> f;
        std::vector<double> z;
        for (const auto* m : clusters[i]) {
            f.push_back(m->freq_hz);
            z.push_back(m->damping);
        }
        ModeStatistics ms;
        ms.center_hz = centers[i];
        ms.freq = summarize(f);
        ms.damping = summarize(z);
        ms.ci_width_freq = 1.96 * ms.freq.std;
        ms.ci_width_damp = 1.96 * ms.damping.std;
        stats.modes.push_back(std::move(ms));
    }
    if (stats.modes.empty()) {
        throw InputError("sweep_statistics: no diagram entries could be clustered");
    }
    return stats;
}

double averaged_ci_width(std::span<const double> stds) {
    if (stds.empty()) {
        throw InputError("averaged_ci_width: no values");
    }
    double sum = 0.0;
    for (double s : stds) {
        sum += s;
    }
    return 1.96 * sum / static_cast<double>(stds.size());
}

std::vector<int> match_modes(std::span<const ModeEstimate> modes,
                             std::span<const double> reference_hz, double tol) {
    std::vector<int> out(reference_hz.size(), -1);
    for (std::size_t j = 0; j < reference_hz.size(); ++j) {
        double best = tol;
        for (std::size_t i = 0; i < modes.size(); ++i) {
            const double rel = std::abs(modes[i].freq_hz - reference_hz[j]) / reference_hz[j];
            if (rel <= best) {
                best = rel;
                out[j] = static_cast<int>(i);
            }
        }
    }
    return out;
}

double loglog_slope(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw InputError("loglog_slope: need at least two paired points");
    }
    const auto n = static_cast<double>(x.size());
    double sx = 0.0;
    double sy = 0.0;
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0)) {
            throw InputError("loglog_slope: values must be positive");
        }
        const double lx = std::log(x[i]);
        const double ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double den = n * sxx - sx * sx;
    if (!(std::abs(den) > 0.0)) {
        throw InputError("loglog_slope: x values are all equal");
    }
    return (n * sxy - sx * sy) / den;
}

NoiseStudyResult noise_scaling_study(const LtiSecondOrderModel& model,
                                     const TimeSeries& excitation,
                                     const NoiseStudyOptions& options) {
    if (options.taus.empty() || !std::is_sorted(options.taus.begin(), options.taus.end())) {
        throw ConfigError("noise study: tau list must be nonempty and ascending");
    }
    if (options.trials < 1) {
        throw ConfigError("noise study: at least one trial required");
    }
    const auto reference = analytic_modes(model);
    NoiseStudyResult result;
    for (const auto& m : reference) {
        result.reference_freq.push_back(m.freq_hz);
        result.reference_damping.push_back(m.damping);
    }
    const std::size_t modes = reference.size();
    const TimeSeries clean = simulate(model, excitation);

    std::vector<std::vector<std::vector<double>>> freq(options.taus.size(),
                                                       std::vector<std::vector<double>>(modes));
    std::vector<std::vector<std::vector<double>>> damp = freq;
    std::vector<int> failures(options.taus.size(), 0);
    for (int t = 0; t < options.trials; ++t) {
        const TimeSeries noisy =
            add_noise(clean, options.snr_db, options.seed + static_cast<std::uint64_t>(t));
        for (std::size_t ti = 0; ti < options.taus.size(); ++ti) {
            try {
                SnapshotSet snaps = build_snapshots(noisy, excitation, options.taus[ti], options.tau_b);
                if (options.window == SnapshotWindow::FreeDecay) {
                    snaps = snaps.free_decay();
                }
                const auto found = to_modes(fit(snaps, options.fit));
                const auto match = match_modes(found, result.reference_freq, options.match_tol);
                if (std::find(match.begin(), match.end(), -1) != match.end()) {
                    ++failures[ti];
                    continue;
                }
                for (std::size_t j = 0; j < modes; ++j) {
                    freq[ti][j].push_back(found[static_cast<std::size_t>(match[j])].freq_hz);
                    damp[ti][j].push_back(found[static_cast<std::size_t>(match[j])].damping);
                }
            } catch (const Error&) {
                ++failures[ti];
            }
        }
    }

    std::vector<double> slope_x;
    std::vector<double> slope_y;
    for (std::size_t ti = 0; ti < options.taus.size(); ++ti) {
        NoiseStudyRow row;
        row.tau = options.taus[ti];
        row.failures = failures[ti];
        row.excluded = static_cast<double>(failures[ti]) >
                           options.max_failure_rate * static_cast<double>(options.trials) ||
                       freq[ti][0].empty();
        for (std::size_t j = 0; j < modes; ++j) {
            if (freq[ti][j].empty()) {
                const double nan = std::numeric_limits<double>::quiet_NaN();
                row.std_freq.push_back(nan);
                row.std_damping.push_back(nan);
                row.mean_freq.push_back(nan);
                row.mean_damping.push_back(nan);
                continue;
            }
            const Summary sf = summarize(freq[ti][j]);
            const Summary sz = summarize(damp[ti][j]);
            row.std_freq.push_back(sf.std);
            row.std_damping.push_back(sz.std);
            row.mean_freq.push_back(sf.mean);
            row.mean_damping.push_back(sz.mean);
        }
        if (!row.excluded && row.std_damping[0] > 0.0) {
            slope_x.push_back(static_cast<double>(row.tau));
            slope_y.push_back(row.std_damping[0]);
        }
        result.rows.push_back(std::move(row));
    }
    if (slope_x.size() >= 2) {
        result.slope_damping_1 = loglog_slope(slope_x, slope_y);
        result.slope_valid = true;
    }
    return result;
}

}  // namespace tdmdc
