#pragma once

#include <optional>

#include <Eigen/Dense>

#include "tdmdc/time_series.hpp"

namespace tdmdc {

struct EmbeddingSpec {
    int tau_a = 1;   ///< output delay order
    int tau_b = 1;   ///< input delay order (ignored when m = 0)
    Index n = 0;     ///< output channels
    Index m = 0;     ///< input channels, 0 for output-only data

    Index state_rows() const { return n * (tau_a + 1); }
    Index input_rows() const { return m * tau_b; }

    void validate() const;
};

/// ceil(fs/f_min - 1): smallest delay order whose window spans one period of f_min.
int min_delay_order(double fs_hz, double f_min_hz);

/// min(k_min, K - k_max)
Index max_delay_order_chirp(Index k_min, Index k_max, Index K);

/// Sample indices where a sweep f0 -> f1 over `duration_s` crosses `f_low_hz` and
/// `f_high_hz`, rounded to the nearest sample.
std::pair<Index, Index> chirp_crossing_samples(double f0_hz, double f1_hz, double duration_s,
                                               double dt, double f_low_hz, double f_high_hz);

/// Delay-embedded snapshots over a column range of the source record. Column c of
///   X   stacks y_c, y_{c-1}, ..., y_{c-tau_a}
///   X'  stacks y_{c+1}, ..., y_{c+1-tau_a}
///   Gamma stacks u_c, ..., u_{c-tau_b+1}
/// with samples outside the record taken as zero. The full range is c = 0 .. K-2.
/// Matrices are materialised on request, so large embeddings can be consumed through
/// the source signals alone.
class SnapshotSet {
 public:
    SnapshotSet(Eigen::MatrixXd outputs, Eigen::MatrixXd inputs, EmbeddingSpec spec, double dt,
                Index first_column, Index column_count);

    const EmbeddingSpec& spec() const { return spec_; }
    double dt() const { return dt_; }
    Index source_samples() const { return outputs_.cols(); }
    Index first_column() const { return first_; }
    Index columns() const { return count_; }

    /// Source outputs (n x K) and inputs aligned to the output time grid (m x K).
    const Eigen::MatrixXd& outputs() const { return outputs_; }
    const Eigen::MatrixXd& inputs() const { return inputs_; }

    Eigen::MatrixXd X() const;
    Eigen::MatrixXd X_prime() const;
    Eigen::MatrixXd Gamma() const;

    /// Column j (0-based within the range) of X.
    Eigen::VectorXd x_column(Index j) const;

    /// Sub-range of the current columns.
    SnapshotSet restrict(Index first, Index count) const;

    /// Columns whose windows lie entirely inside the record (no zero fill).
    SnapshotSet valid_columns() const;

    /// Columns whose output and input windows start after the last sample where any input
    /// exceeds `input_tolerance` times the peak input, so Gamma vanishes. Throws InputError
    /// if fewer than two such columns remain.
    SnapshotSet free_decay(double input_tolerance = 0.0) const;

 private:
    Eigen::MatrixXd outputs_;
    Eigen::MatrixXd inputs_;
    EmbeddingSpec spec_;
    double dt_;
    Index first_;
    Index count_;
};

/// Builds the full-range snapshot set. Inputs are aligned to the outputs by start time,
/// so independently padded series stay in register. `inputs` may be empty for
/// output-only data.
SnapshotSet build_snapshots(const TimeSeries& outputs, const std::optional<TimeSeries>& inputs,
                            int tau_a, int tau_b);

}  // namespace tdmdc
