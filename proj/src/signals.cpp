#include "tdmdc/signals.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include "tdmdc/errors.hpp"

namespace tdmdc {

namespace {

constexpr double kStopbandDb = 80.0;

double kaiser_beta(double attenuation_db) {
    if (attenuation_db > 50.0) {
        return 0.1102 * (attenuation_db - 8.7);
    }
    if (attenuation_db >= 21.0) {
        return 0.5842 * std::pow(attenuation_db - 21.0, 0.4) + 0.07886 * (attenuation_db - 21.0);
    }
    return 0.0;
}

double sinc(double x) {
    if (x == 0.0) {
        return 1.0;
    }
    const double px = std::numbers::pi * x;
    return std::sin(px) / px;
}

void check_sweep(double f0_hz, double f1_hz, double duration_s) {
    if (!(f0_hz > 0.0) || !(f1_hz > f0_hz) || !(duration_s > 0.0) || !std::isfinite(f1_hz) ||
        !std::isfinite(duration_s)) {
        throw InputError("chirp: require 0 < f0 < f1 and a positive duration");
    }
}

}  // namespace

TimeSeries impulse(Index n_channels, Index active_channel, double amplitude, Index sample_index,
                   Index length_samples, double dt) {
    if (n_channels < 1 || active_channel < 1 || active_channel > n_channels) {
        throw InputError("impulse: active channel must lie in 1.." + std::to_string(n_channels));
    }
    if (sample_index < 0 || sample_index >= length_samples) {
        throw InputError("impulse: sample index outside the record");
    }
    if (!std::isfinite(amplitude)) {
        throw InputError("impulse: amplitude must be finite");
    }
    Eigen::MatrixXd data = Eigen::MatrixXd::Zero(n_channels, length_samples);
    data(active_channel - 1, sample_index) = amplitude;
    return TimeSeries(std::move(data), dt);
}

double chirp_frequency(double f0_hz, double f1_hz, double duration_s, double t) {
    check_sweep(f0_hz, f1_hz, duration_s);
    return f0_hz * std::pow(f1_hz / f0_hz, t / duration_s);
}

double chirp_time_at(double f0_hz, double f1_hz, double duration_s, double f_hz) {
    check_sweep(f0_hz, f1_hz, duration_s);
    if (!(f_hz > 0.0)) {
        throw InputError("chirp: frequency must be positive");
    }
    return duration_s * std::log(f_hz / f0_hz) / std::log(f1_hz / f0_hz);
}

Chirp log_chirp(double f0_hz, double f1_hz, double duration_s, double dt, double amplitude) {
    check_sweep(f0_hz, f1_hz, duration_s);
    if (!(dt > 0.0)) {
        throw InputError("chirp: dt must be positive");
    }
    const double nyquist = 0.5 / dt;
    if (f1_hz > nyquist * (1.0 + 1e-12)) {
        throw InputError("chirp: end frequency lies above the Nyquist frequency");
    }
    const auto last = static_cast<Index>(std::llround(duration_s / dt));
    if (last < 1) {
        throw InputError("chirp: duration shorter than one sample");
    }
    const double ratio = f1_hz / f0_hz;
    const double log_ratio = std::log(ratio);
    Eigen::MatrixXd data(1, last + 1);
    std::vector<double> freq(static_cast<std::size_t>(last + 1));
    for (Index k = 0; k <= last; ++k) {
        const double t = static_cast<double>(k) * dt;
        const double growth = std::pow(ratio, t / duration_s);
        const double phase = 2.0 * std::numbers::pi * f0_hz * duration_s / log_ratio * (growth - 1.0);
        data(0, k) = amplitude * std::sin(phase);
        freq[static_cast<std::size_t>(k)] = f0_hz * growth;
    }
    return {TimeSeries(std::move(data), dt), std::move(freq)};
}

TimeSeries spread_to_channels(const TimeSeries& single, Index n_channels, Index active_channel) {
    if (single.channels() != 1) {
        throw InputError("spread_to_channels: expected a single-channel series");
    }
    if (active_channel < 1 || active_channel > n_channels) {
        throw InputError("spread_to_channels: active channel out of range");
    }
    Eigen::MatrixXd data = Eigen::MatrixXd::Zero(n_channels, single.samples());
    data.row(active_channel - 1) = single.data().row(0);
    return TimeSeries(std::move(data), single.dt(), single.t0());
}

TimeSeries add_noise(const TimeSeries& signal, double snr_db, std::uint64_t seed) {
    if (std::isnan(snr_db) || snr_db == -std::numeric_limits<double>::infinity()) {
        throw InputError("add_noise: SNR must be finite or +inf");
    }
    if (snr_db == std::numeric_limits<double>::infinity()) {
        return signal;
    }
    Eigen::MatrixXd data = signal.data();
    const double samples = static_cast<double>(signal.samples());
    for (Index ch = 0; ch < signal.channels(); ++ch) {
        const double power = data.row(ch).squaredNorm() / samples;
        if (!(power > 0.0)) {
            throw InputError("add_noise: channel " + std::to_string(ch + 1) +
                             " has zero power, SNR is undefined");
        }
        const double sigma = std::sqrt(power / std::pow(10.0, snr_db / 10.0));
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(ch)};
        std::mt19937_64 rng(seq);
        std::normal_distribution<double> normal(0.0, sigma);
        for (Index k = 0; k < signal.samples(); ++k) {
            data(ch, k) += normal(rng);
        }
    }
    return TimeSeries(std::move(data), signal.dt(), signal.t0());
}

std::pair<TimeSeries, TimeSeries> zero_pad(const TimeSeries& outputs, const TimeSeries& inputs,
                                           int tau_a, int tau_b) {
    if (tau_a < 0 || tau_b < 0) {
        throw InputError("zero_pad: padding lengths must be non-negative");
    }
    if (std::abs(outputs.dt() - inputs.dt()) > 1e-12 * outputs.dt()) {
        throw InputError("zero_pad: outputs and inputs must share dt");
    }
    auto pad = [](const TimeSeries& s, int count) {
        Eigen::MatrixXd data = Eigen::MatrixXd::Zero(s.channels(), s.samples() + 2 * count);
        data.middleCols(count, s.samples()) = s.data();
        return TimeSeries(std::move(data), s.dt(), s.t0() - count * s.dt());
    };
    return {pad(outputs, tau_a), pad(inputs, tau_b)};
}

ResampleFilter design_resample_filter(double source_fs_hz, double target_fs_hz) {
    ResampleFilter f;
    f.cutoff_hz = 0.475 * target_fs_hz;
    f.transition_hz = 0.05 * target_fs_hz;
    f.kaiser_beta = kaiser_beta(kStopbandDb);
    const double taps = (kStopbandDb - 7.95) /
                        (2.285 * 2.0 * std::numbers::pi * f.transition_hz / source_fs_hz);
    f.half_length_s = 0.5 * std::ceil(taps) / source_fs_hz;
    return f;
}

TimeSeries resample(const TimeSeries& signal, double target_fs_hz) {
    const double fs = signal.fs();
    if (!(target_fs_hz > 0.0) || !std::isfinite(target_fs_hz)) {
        throw InputError("resample: target rate must be positive");
    }
    if (target_fs_hz > fs * (1.0 + 1e-12)) {
        throw InputError("resample: target rate exceeds the source rate");
    }
    if (std::abs(target_fs_hz - fs) <= 1e-12 * fs) {
        return signal;
    }
    const ResampleFilter filter = design_resample_filter(fs, target_fs_hz);
    const double dt = signal.dt();
    const double new_dt = 1.0 / target_fs_hz;
    const double span = static_cast<double>(signal.samples() - 1) * dt;
    const auto count = static_cast<Index>(std::floor(span / new_dt + 1e-9)) + 1;
    if (count < 2) {
        throw InputError("resample: record too short for the target rate");
    }
    const double i0_beta = std::cyl_bessel_i(0.0, filter.kaiser_beta);
    const Index reach = static_cast<Index>(std::ceil(filter.half_length_s / dt));
    const Eigen::MatrixXd& x = signal.data();
    Eigen::MatrixXd y = Eigen::MatrixXd::Zero(signal.channels(), count);
    Eigen::VectorXd weights;
    for (Index j = 0; j < count; ++j) {
        const double t = static_cast<double>(j) * new_dt;
        const double centre = t / dt;
        const Index lo = std::max<Index>(0, static_cast<Index>(std::ceil(centre)) - reach);
        const Index hi = std::min<Index>(signal.samples() - 1,
                                         static_cast<Index>(std::floor(centre)) + reach);
        if (hi < lo) {
            continue;
        }
        weights.resize(hi - lo + 1);
        for (Index k = lo; k <= hi; ++k) {
            const double tau = t - static_cast<double>(k) * dt;
            const double ratio = tau / filter.half_length_s;
            double w = 0.0;
            if (std::abs(ratio) < 1.0) {
                w = std::cyl_bessel_i(0.0, filter.kaiser_beta * std::sqrt(1.0 - ratio * ratio)) /
                    i0_beta;
            }
            weights(k - lo) = 2.0 * filter.cutoff_hz * dt * sinc(2.0 * filter.cutoff_hz * tau) * w;
        }
        y.col(j).noalias() = x.middleCols(lo, hi - lo + 1) * weights;
    }
    return TimeSeries(std::move(y), new_dt, signal.t0());
}

}  // namespace tdmdc
