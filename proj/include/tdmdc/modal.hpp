#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "tdmdc/dmdc.hpp"
#include "tdmdc/reference_models.hpp"
#include "tdmdc/time_series.hpp"

namespace tdmdc {

struct ModeEstimate {
    double freq_hz = 0.0;
    double damping = 0.0;
    std::complex<double> s;    ///< continuous eigenvalue, rad/s
    std::complex<double> mu;   ///< discrete eigenvalue
    Eigen::VectorXcd shape;    ///< zero-delay block of the DMD mode, normalised
    int delay_order = 0;
    std::complex<double> amplitude;  ///< least-squares weight of the first snapshot
    bool negative_damping = false;
};

struct Band {
    double lo_hz = 0.0;
    double hi_hz = 0.0;
};

/// Physical modes from the DMDc eigenpairs, one per conjugate pair (positive frequency),
/// sorted by ascending frequency. Non-oscillatory and vanishing eigenvalues are dropped.
std::vector<ModeEstimate> to_modes(const DmdcModel& model, std::optional<Band> band = {});

/// Same mapping for bare discrete eigenvalues (no shapes).
std::vector<ModeEstimate> modes_from_eigenvalues(std::span<const std::complex<double>> mu,
                                                 double dt);

/// |phi^H psi|^2 / ((phi^H phi)(psi^H psi)). Throws InputError on zero or mismatched vectors.
double mac(const Eigen::VectorXcd& phi, const Eigen::VectorXcd& psi);

/// Rows follow `estimated`, columns follow `reference`.
Eigen::MatrixXd mac_matrix(std::span<const Eigen::VectorXcd> estimated,
                           std::span<const Eigen::VectorXcd> reference);

enum class Stability { New, StableFreq, StableAll };

const char* to_string(Stability s);

struct DiagramEntry {
    int delay_order = 0;
    ModeEstimate mode;
    Stability stability = Stability::New;
};

struct SweepFailure {
    int delay_order = 0;
    std::string message;
};

struct OrderSummary {
    int delay_order = 0;
    Index r = 0;
    Index p = 0;
    std::vector<std::string> warnings;
};

struct StabilizationDiagram {
    std::vector<DiagramEntry> entries;  ///< sorted by (delay_order, freq_hz)
    std::vector<OrderSummary> orders;   ///< successful orders, ascending
    std::vector<SweepFailure> gaps;
    double freq_tol = 0.01;
    double damp_tol = 0.05;
};

/// Flags each mode against the nearest-frequency mode at the most recent earlier order that
/// produced modes: stable_freq if |df|/f < freq_tol, stable_all if also |dz|/z < damp_tol.
void classify_stability(StabilizationDiagram& diagram);

enum class SnapshotWindow {
    All,        ///< every snapshot column
    FreeDecay,  ///< only columns after the excitation has ended
};

struct SweepOptions {
    int tau_min = 2;
    int tau_max = 2;
    int step = 1;
    int tau_b = 2;
    FitOptions fit;
    std::optional<Band> band;
    SnapshotWindow window = SnapshotWindow::All;
    double freq_tol = 0.01;
    double damp_tol = 0.05;
    unsigned threads = 1;
};

/// Identification over a range of output delay orders. A failed order becomes a gap.
StabilizationDiagram stabilization_sweep(const TimeSeries& outputs,
                                         const std::optional<TimeSeries>& inputs,
                                         const SweepOptions& options);

struct Summary {
    double mean = 0.0;
    double std = 0.0;     ///< sample standard deviation (n - 1), zero for a single value
    double median = 0.0;
    double q1 = 0.0;
    double q3 = 0.0;
    double min = 0.0;
    double max = 0.0;
    std::size_t count = 0;
};

/// Quartiles use linear interpolation between order statistics.
Summary summarize(std::span<const double> values);

struct ModeStatistics {
    double center_hz = 0.0;
    Summary freq;
    Summary damping;
    double ci_width_freq = 0.0;  ///< 1.96 std
    double ci_width_damp = 0.0;
};

struct SweepStatistics {
    std::vector<ModeStatistics> modes;  ///< ascending centre frequency
};

/// Groups diagram entries by frequency. With reference frequencies each entry joins the
/// nearest reference within `tol` (relative); without, entries are clustered greedily in
/// ascending frequency. Throws InputError when nothing clusters.
SweepStatistics sweep_statistics(const StabilizationDiagram& diagram, double tol = 0.02,
                                 std::span<const double> reference_hz = {});

/// 1.96 times the mean of the given standard deviations (the averaged CI form).
double averaged_ci_width(std::span<const double> stds);

struct NoiseStudyOptions {
    double snr_db = 20.0;
    std::vector<int> taus;
    int trials = 20;
    std::uint64_t seed = 1;
    int tau_b = 2;
    FitOptions fit = {RankPolicy::fixed(12, 12)};
    SnapshotWindow window = SnapshotWindow::FreeDecay;
    double match_tol = 0.05;  ///< relative frequency window for pairing with reference modes
    double max_failure_rate = 0.2;
};

struct NoiseStudyRow {
    int tau = 0;
    std::vector<double> std_damping;  ///< per reference mode
    std::vector<double> std_freq;
    std::vector<double> mean_damping;
    std::vector<double> mean_freq;
    int failures = 0;  ///< trials where some reference mode was not found
    bool excluded = false;
};

struct NoiseStudyResult {
    std::vector<NoiseStudyRow> rows;
    std::vector<double> reference_freq;
    std::vector<double> reference_damping;
    double slope_damping_1 = 0.0;  ///< log-log slope of std(zeta_1) against tau
    bool slope_valid = false;
};

/// Monte-Carlo dispersion of identified modal parameters against delay order. Trial t uses
/// noise seed `seed + t` and the same noisy record for every tau.
NoiseStudyResult noise_scaling_study(const LtiSecondOrderModel& model,
                                     const TimeSeries& excitation,
                                     const NoiseStudyOptions& options);

/// Least-squares slope of log(y) against log(x).
double loglog_slope(std::span<const double> x, std::span<const double> y);

/// Pairs estimated modes with reference frequencies by nearest frequency within `tol`
/// (relative). Returns, per reference, the index into `modes` or -1.
std::vector<int> match_modes(std::span<const ModeEstimate> modes,
                             std::span<const double> reference_hz, double tol);

}  // namespace tdmdc
