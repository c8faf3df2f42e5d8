#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "tdmdc/time_series.hpp"

namespace tdmdc {

/// Single nonzero sample `amplitude` on `active_channel` (1-based) at `sample_index`.
TimeSeries impulse(Index n_channels, Index active_channel, double amplitude, Index sample_index,
                   Index length_samples, double dt);

/// f(t) = f0 (f1/f0)^(t/T)
double chirp_frequency(double f0_hz, double f1_hz, double duration_s, double t);

/// Inverse of chirp_frequency. Returns the time at which the sweep passes `f_hz`.
double chirp_time_at(double f0_hz, double f1_hz, double duration_s, double f_hz);

struct Chirp {
    TimeSeries signal;                  ///< one channel, samples k = 0 .. round(T/dt)
    std::vector<double> frequency_hz;   ///< instantaneous frequency per sample
};

/// Exponential sine sweep u(t) = A sin(2 pi f0 T / ln(f1/f0) ((f1/f0)^(t/T) - 1)).
/// Requires 0 < f0 < f1 <= 1/(2 dt).
Chirp log_chirp(double f0_hz, double f1_hz, double duration_s, double dt, double amplitude);

/// Places a single-channel signal on `active_channel` (1-based) of an otherwise zero
/// n-channel series.
TimeSeries spread_to_channels(const TimeSeries& single, Index n_channels, Index active_channel);

/// Adds white Gaussian noise per channel at the given SNR (dB, mean-square power). Each
/// channel draws from its own mt19937_64 stream seeded by (seed, channel). An infinite
/// SNR returns the input unchanged. Throws InputError for a zero-power channel.
TimeSeries add_noise(const TimeSeries& signal, double snr_db, std::uint64_t seed);

/// Prepends and appends tau_a zeros to the outputs and tau_b zeros to the inputs. The start
/// times move back so the measured samples keep their time stamps.
std::pair<TimeSeries, TimeSeries> zero_pad(const TimeSeries& outputs, const TimeSeries& inputs,
                                           int tau_a, int tau_b);

struct ResampleFilter {
    double cutoff_hz = 0.0;
    double transition_hz = 0.0;
    double kaiser_beta = 0.0;
    double half_length_s = 0.0;
};

/// Kaiser-windowed sinc (80 dB) with passband edge 0.45 fs' and stopband edge 0.5 fs'.
ResampleFilter design_resample_filter(double source_fs_hz, double target_fs_hz);

/// Zero-phase low-pass plus band-limited interpolation onto a uniform grid at
/// `target_fs_hz`, starting at the same t0. Samples outside the record count as zero.
TimeSeries resample(const TimeSeries& signal, double target_fs_hz);

}  // namespace tdmdc
