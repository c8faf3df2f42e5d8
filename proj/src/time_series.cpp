#include "tdmdc/time_series.hpp"

#include <cmath>

#include "tdmdc/errors.hpp"

namespace tdmdc {

TimeSeries::TimeSeries(Eigen::MatrixXd data, double dt, double t0)
    : data_(std::move(data)), dt_(dt), t0_(t0) {
    if (!(dt_ > 0.0) || !std::isfinite(dt_)) {
        throw InputError("time series: sample interval must be positive and finite");
    }
    if (!std::isfinite(t0_)) {
        throw InputError("time series: start time must be finite");
    }
    if (data_.rows() < 1) {
        throw InputError("time series: at least one channel required");
    }
    if (data_.cols() < 2) {
        throw InputError("time series: at least two samples required");
    }
    if (!data_.allFinite()) {
        throw InputError("time series: non-finite sample");
    }
}

TimeSeries TimeSeries::zeros(Index channels, Index samples, double dt, double t0) {
    return TimeSeries(Eigen::MatrixXd::Zero(channels, samples), dt, t0);
}

TimeSeries TimeSeries::scaled(double factor) const {
    return TimeSeries(data_ * factor, dt_, t0_);
}

TimeSeries TimeSeries::slice(Index first, Index count) const {
    if (first < 0 || count < 2 || first + count > samples()) {
        throw InputError("time series: slice out of range");
    }
    return TimeSeries(data_.middleCols(first, count), dt_, time(first));
}

}  // namespace tdmdc
