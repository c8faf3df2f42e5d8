#pragma once

#include <Eigen/Dense>

namespace tdmdc {

using Index = Eigen::Index;

/// Uniformly sampled multi-channel real signal. Rows are channels, columns are samples.
class TimeSeries {
 public:
    /// Throws InputError unless dt > 0, at least one channel, at least two samples and all
    /// samples finite.
    TimeSeries(Eigen::MatrixXd data, double dt, double t0 = 0.0);

    /// All-zero series.
    static TimeSeries zeros(Index channels, Index samples, double dt, double t0 = 0.0);

    const Eigen::MatrixXd& data() const { return data_; }
    double dt() const { return dt_; }
    double t0() const { return t0_; }
    double fs() const { return 1.0 / dt_; }
    Index channels() const { return data_.rows(); }
    Index samples() const { return data_.cols(); }
    double time(Index k) const { return t0_ + static_cast<double>(k) * dt_; }

    double operator()(Index channel, Index k) const { return data_(channel, k); }

    /// Returns a copy with every sample multiplied by `factor`.
    TimeSeries scaled(double factor) const;

    /// Columns [first, first + count) as a new series with shifted t0.
    TimeSeries slice(Index first, Index count) const;

 private:
    Eigen::MatrixXd data_;
    double dt_;
    double t0_;
};

}  // namespace tdmdc
