#include "tdmdc/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tdmdc/errors.hpp"
#include "tdmdc/signals.hpp"

namespace tdmdc {

void EmbeddingSpec::validate() const {
    if (tau_a < 1) {
        throw InputError("embedding: tau_a must be at least 1");
    }
    if (m > 0 && tau_b < 1) {
        throw InputError("embedding: tau_b must be at least 1");
    }
    if (n < 1 || m < 0) {
        throw InputError("embedding: at least one output channel required");
    }
}

int min_delay_order(double fs_hz, double f_min_hz) {
    if (!(f_min_hz > 0.0)) {
        throw InputError("min_delay_order: lowest frequency must be positive");
    }
    if (!(fs_hz > 2.0 * f_min_hz)) {
        throw InputError("min_delay_order: sampling rate must exceed twice the lowest frequency");
    }
    return static_cast<int>(std::ceil(fs_hz / f_min_hz - 1.0));
}

Index max_delay_order_chirp(Index k_min, Index k_max, Index K) {
    if (k_min < 0 || k_min > k_max || k_max > K) {
        throw InputError("max_delay_order_chirp: require 0 <= k_min <= k_max <= K");
    }
    return std::min(k_min, K - k_max);
}

std::pair<Index, Index> chirp_crossing_samples(double f0_hz, double f1_hz, double duration_s,
                                               double dt, double f_low_hz, double f_high_hz) {
    if (!(f_low_hz >= f0_hz) || !(f_high_hz <= f1_hz) || f_low_hz > f_high_hz) {
        throw InputError("chirp crossings: frequencies must lie inside the sweep");
    }
    const double t_low = chirp_time_at(f0_hz, f1_hz, duration_s, f_low_hz);
    const double t_high = chirp_time_at(f0_hz, f1_hz, duration_s, f_high_hz);
    return {static_cast<Index>(std::llround(t_low / dt)),
            static_cast<Index>(std::llround(t_high / dt))};
}

SnapshotSet::SnapshotSet(Eigen::MatrixXd outputs, Eigen::MatrixXd inputs, EmbeddingSpec spec,
                         double dt, Index first_column, Index column_count)
    : outputs_(std::move(outputs)),
      inputs_(std::move(inputs)),
      spec_(spec),
      dt_(dt),
      first_(first_column),
      count_(column_count) {
    spec_.validate();
    if (outputs_.rows() != spec_.n || inputs_.rows() != spec_.m) {
        throw InputError("snapshots: channel counts do not match the embedding spec");
    }
    if (spec_.m > 0 && inputs_.cols() != outputs_.cols()) {
        throw InputError("snapshots: inputs must be aligned to the output grid");
    }
    if (first_ < 0 || count_ < 1 || first_ + count_ > outputs_.cols() - 1) {
        throw InputError("snapshots: column range outside the record");
    }
}

Eigen::MatrixXd SnapshotSet::X() const {
    const Index n = spec_.n;
    Eigen::MatrixXd x = Eigen::MatrixXd::Zero(spec_.state_rows(), count_);
    for (int l = 0; l <= spec_.tau_a; ++l) {
        const Index lo = std::max<Index>(0, l - first_);
        if (lo < count_) {
            x.block(l * n, lo, n, count_ - lo) = outputs_.middleCols(first_ + lo - l, count_ - lo);
        }
    }
    return x;
}

Eigen::MatrixXd SnapshotSet::X_prime() const {
    const Index n = spec_.n;
    Eigen::MatrixXd x = Eigen::MatrixXd::Zero(spec_.state_rows(), count_);
    for (int l = 0; l <= spec_.tau_a; ++l) {
        const Index lo = std::max<Index>(0, l - 1 - first_);
        if (lo < count_) {
            x.block(l * n, lo, n, count_ - lo) =
                outputs_.middleCols(first_ + 1 + lo - l, count_ - lo);
        }
    }
    return x;
}

Eigen::MatrixXd SnapshotSet::Gamma() const {
    const Index m = spec_.m;
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(spec_.input_rows(), count_);
    if (m == 0) {
        return g;
    }
    for (int l = 0; l < spec_.tau_b; ++l) {
        const Index lo = std::max<Index>(0, l - first_);
        if (lo < count_) {
            g.block(l * m, lo, m, count_ - lo) = inputs_.middleCols(first_ + lo - l, count_ - lo);
        }
    }
    return g;
}

Eigen::VectorXd SnapshotSet::x_column(Index j) const {
    if (j < 0 || j >= count_) {
        throw InputError("snapshots: column index out of range");
    }
    const Index n = spec_.n;
    const Index c = first_ + j;
    Eigen::VectorXd x = Eigen::VectorXd::Zero(spec_.state_rows());
    for (int l = 0; l <= spec_.tau_a && c - l >= 0; ++l) {
        x.segment(l * n, n) = outputs_.col(c - l);
    }
    return x;
}

SnapshotSet SnapshotSet::restrict(Index first, Index count) const {
    if (first < 0 || count < 1 || first + count > count_) {
        throw InputError("snapshots: restricted range outside the current columns");
    }
    return SnapshotSet(outputs_, inputs_, spec_, dt_, first_ + first, count);
}

SnapshotSet SnapshotSet::valid_columns() const {
    Index start = spec_.tau_a;
    if (spec_.m > 0) {
        start = std::max<Index>(start, spec_.tau_b - 1);
    }
    const Index end = first_ + count_;
    const Index lo = std::max(start, first_);
    if (end - lo < 1) {
        throw InputError("snapshots: no column has a fully measured window");
    }
    return SnapshotSet(outputs_, inputs_, spec_, dt_, lo, end - lo);
}

SnapshotSet SnapshotSet::free_decay(double input_tolerance) const {
    Index last_active = -1;
    if (spec_.m > 0) {
        const Eigen::VectorXd peak = inputs_.cwiseAbs().colwise().maxCoeff();
        const double limit = input_tolerance * peak.maxCoeff();
        for (Index k = peak.size() - 1; k >= 0; --k) {
            if (peak(k) > limit) {
                last_active = k;
                break;
            }
        }
    }
    Index start = last_active + 1 + spec_.tau_a;
    if (spec_.m > 0) {
        start = std::max<Index>(start, last_active + spec_.tau_b);
    }
    const Index end = first_ + count_;
    const Index lo = std::max(start, first_);
    if (end - lo < 2) {
        throw InputError("snapshots: fewer than two free-decay columns after the excitation");
    }
    return SnapshotSet(outputs_, inputs_, spec_, dt_, lo, end - lo);
}

SnapshotSet build_snapshots(const TimeSeries& outputs, const std::optional<TimeSeries>& inputs,
                            int tau_a, int tau_b) {
    EmbeddingSpec spec;
    spec.tau_a = tau_a;
    spec.tau_b = tau_b;
    spec.n = outputs.channels();
    spec.m = inputs ? inputs->channels() : 0;
    spec.validate();

    const Index K = outputs.samples();
    const Index need = std::max(tau_a, spec.m > 0 ? tau_b : 0) + 2;
    if (K <= need) {
        throw InputError("snapshots: record needs more than " + std::to_string(need) +
                         " samples for this embedding");
    }
    Eigen::MatrixXd aligned(spec.m, K);
    if (inputs) {
        if (std::abs(inputs->dt() - outputs.dt()) > 1e-12 * outputs.dt()) {
            throw InputError("snapshots: outputs and inputs must share dt");
        }
        const double shift = (outputs.t0() - inputs->t0()) / outputs.dt();
        const auto offset = static_cast<Index>(std::llround(shift));
        if (std::abs(shift - static_cast<double>(offset)) > 1e-6) {
            throw InputError("snapshots: input and output start times are not on a common grid");
        }
        aligned.setZero();
        for (Index k = 0; k < K; ++k) {
            const Index src = k + offset;
            if (src >= 0 && src < inputs->samples()) {
                aligned.col(k) = inputs->data().col(src);
            }
        }
    }
    return SnapshotSet(outputs.data(), std::move(aligned), spec, outputs.dt(), 0, K - 1);
}

}  // namespace tdmdc
