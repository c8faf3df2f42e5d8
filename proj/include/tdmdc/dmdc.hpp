#pragma once

#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "tdmdc/embedding.hpp"
#include "tdmdc/time_series.hpp"

namespace tdmdc {

/// Delta E_i = -(s_i / sum s) ln(s_i / sum s); zero entries contribute zero.
std::vector<double> entropy_increments(std::span<const double> singular_values);

/// Number of leading components kept by the singular-entropy criterion: the count of
/// values before the first index i where both Delta E_i and |Delta E_{i+1} - Delta E_i|
/// drop below `threshold` (Delta E past the end counts as zero). Never less than one.
/// Returns the full length if the increments never settle.
Index singular_entropy_rank(std::span<const double> singular_values, double threshold = 1e-3);

struct RankSelection {
    Index r = 0;  ///< output-side truncation
    Index p = 0;  ///< input-side truncation
    std::vector<double> entropy_increments;  ///< of the Omega spectrum when chosen automatically
    std::vector<double> variation;           ///< forward differences of the above
};

struct RankPolicy {
    bool automatic = true;
    double entropy_threshold = 1e-3;
    Index r = 0;
    Index p = 0;

    static RankPolicy auto_ranks(double threshold = 1e-3) { return {true, threshold, 0, 0}; }
    static RankPolicy fixed(Index r, Index p) { return {false, 1e-3, r, p}; }
};

enum class SvdRoute {
    Auto,    ///< direct for small problems, otherwise the cheaper Gram form
    Direct,  ///< economy SVD of the materialised X' and Omega
    Gram,    ///< eigendecomposition of structured Gram matrices, snapshots never materialised
};

struct FitOptions {
    RankPolicy ranks;
    SvdRoute route = SvdRoute::Auto;
    double pinv_cutoff = 1e-12;  ///< relative singular-value floor on the direct route
};

struct DmdcModel {
    Eigen::MatrixXd A_tilde;    ///< r x r
    Eigen::MatrixXd B_reduced;  ///< r x (m tau_b)
    Eigen::MatrixXd U_hat;      ///< n(tau_a+1) x r, orthonormal columns
    Eigen::VectorXcd eigvals;   ///< sorted by descending modulus, then ascending argument
    Eigen::MatrixXcd eigvecs;   ///< W
    Eigen::MatrixXcd modes;     ///< Phi, n(tau_a+1) x r
    Eigen::VectorXd sigma_out;  ///< leading singular values of X'
    Eigen::VectorXd sigma_in;   ///< leading singular values of Omega
    Eigen::VectorXd initial_snapshot;  ///< first X column of the fitted range
    double dt = 0.0;
    EmbeddingSpec spec;
    RankSelection ranks;
    bool used_gram = false;
    std::vector<std::string> warnings;
};

/// Truncated-SVD DMDc on the given snapshots. Throws NumericalError when the snapshot
/// matrices are numerically zero.
DmdcModel fit(const SnapshotSet& snapshots, const FitOptions& options = {});

struct Reconstruction {
    TimeSeries prediction;  ///< zero-delay block of the one-step prediction
    double relative_residual = 0.0;
};

/// One-step-ahead prediction U_hat (A_tilde U_hat^T X + B_reduced Gamma) against X'.
Reconstruction reconstruct(const DmdcModel& model, const SnapshotSet& snapshots);

}  // namespace tdmdc
