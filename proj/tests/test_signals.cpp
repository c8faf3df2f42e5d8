#include <doctest.h>

#include <cmath>

#include "test_support.hpp"
#include "tdmdc/errors.hpp"
#include "tdmdc/signals.hpp"

using namespace tdmdc;
using tdmdc::test::kPi;

TEST_CASE("impulse places one sample") {
    const TimeSeries u = impulse(6, 3, 2.5, 4, 10, 0.25);
    CHECK(u.channels() == 6);
    CHECK(u.samples() == 10);
    CHECK(u(2, 4) == 2.5);
    CHECK(u.data().cwiseAbs().sum() == 2.5);
    CHECK_THROWS_AS(impulse(6, 0, 1.0, 0, 10, 0.25), InputError);
    CHECK_THROWS_AS(impulse(6, 7, 1.0, 0, 10, 0.25), InputError);
    CHECK_THROWS_AS(impulse(6, 1, 1.0, 10, 10, 0.25), InputError);
}

TEST_CASE("exponential sweep frequency law and its inverse") {
    CHECK(chirp_frequency(0.01, 2.0, 1000.0, 0.0) == doctest::Approx(0.01));
    CHECK(chirp_frequency(0.01, 2.0, 1000.0, 1000.0) == doctest::Approx(2.0));
    CHECK(chirp_frequency(0.01, 2.0, 1000.0, 500.0) == doctest::Approx(std::sqrt(0.02)));
    for (double f : {0.02, 0.0767, 0.5, 1.9}) {
        const double t = chirp_time_at(0.01, 2.0, 1000.0, f);
        CHECK(chirp_frequency(0.01, 2.0, 1000.0, t) == doctest::Approx(f).epsilon(1e-12));
    }
}

TEST_CASE("sweep endpoint and sample count") {
    const Chirp c = log_chirp(0.01, 2.0, 1000.0, 0.25, 1.0);
    CHECK(c.signal.samples() == 4001);
    CHECK(c.frequency_hz.size() == 4001);
    CHECK(c.frequency_hz.back() == doctest::Approx(2.0));
    CHECK(c.frequency_hz.front() == doctest::Approx(0.01));
    CHECK(c.signal(0, 0) == 0.0);
    CHECK_THROWS_AS(log_chirp(0.01, 2.5, 1000.0, 0.25, 1.0), InputError);
    CHECK_THROWS_AS(log_chirp(2.0, 1.0, 1000.0, 0.25, 1.0), InputError);
}

TEST_CASE("sweep zero crossings match the integrated phase") {
    const double f0 = 0.01;
    const double f1 = 2.0;
    const double T = 1000.0;
    const Chirp c = log_chirp(f0, f1, T, 0.025, 1.0);
    int crossings = 0;
    for (Index k = 1; k < c.signal.samples(); ++k) {
        if ((c.signal(0, k - 1) < 0.0) != (c.signal(0, k) < 0.0)) {
            ++crossings;
        }
    }
    const double cycles = f0 * T * (f1 / f0 - 1.0) / std::log(f1 / f0);
    CHECK(std::abs(crossings - 2.0 * cycles) <= 2.0);
    CHECK(c.signal.data().cwiseAbs().maxCoeff() <= 1.0);
    CHECK(c.signal.data().cwiseAbs().maxCoeff() > 0.99);
}

TEST_CASE("spread_to_channels") {
    const Chirp c = log_chirp(0.1, 1.0, 10.0, 0.25, 1.0);
    const TimeSeries u = spread_to_channels(c.signal, 4, 2);
    CHECK(u.channels() == 4);
    CHECK((u.data().row(1) - c.signal.data().row(0)).norm() == 0.0);
    CHECK(u.data().row(0).norm() == 0.0);
    CHECK_THROWS_AS(spread_to_channels(c.signal, 4, 5), InputError);
}

TEST_CASE("noise is reproducible and seed dependent") {
    const auto data = test::benchmark_impulse(1.0, 400);
    const TimeSeries a = add_noise(data.y, 20.0, 7);
    const TimeSeries b = add_noise(data.y, 20.0, 7);
    const TimeSeries c = add_noise(data.y, 20.0, 8);
    CHECK((a.data() - b.data()).norm() == 0.0);
    CHECK((a.data() - c.data()).norm() > 0.0);
    const TimeSeries clean = add_noise(data.y, INFINITY, 7);
    CHECK((clean.data() - data.y.data()).norm() == 0.0);
    CHECK_THROWS_AS(add_noise(TimeSeries::zeros(2, 10, 1.0), 20.0, 1), InputError);
}

TEST_CASE("zero padding keeps time stamps") {
    const auto data = test::benchmark_impulse(1.0, 100);
    const auto [y, u] = zero_pad(data.y, data.u, 5, 2);
    CHECK(y.samples() == 110);
    CHECK(u.samples() == 104);
    CHECK(y.t0() == doctest::Approx(-5 * 0.25));
    CHECK(u.t0() == doctest::Approx(-2 * 0.25));
    CHECK(y(2, 5 + 40) == data.y(2, 40));
    CHECK(u(0, 2) == data.u(0, 0));
    CHECK(y.data().leftCols(5).norm() == 0.0);
    CHECK(y.data().rightCols(5).norm() == 0.0);
    CHECK_THROWS_AS(zero_pad(data.y, data.u, -1, 2), InputError);
}

TEST_CASE("resampling filter design") {
    const ResampleFilter f = design_resample_filter(4.0, 1.4);
    CHECK(f.cutoff_hz == doctest::Approx(0.475 * 1.4));
    CHECK(f.transition_hz == doctest::Approx(0.05 * 1.4));
    CHECK(f.kaiser_beta == doctest::Approx(0.1102 * (80.0 - 8.7)).epsilon(1e-9));
    CHECK(f.half_length_s > 0.0);
}

TEST_CASE("resampling reproduces an in-band sine and rejects an out-of-band one") {
    const double fs = 4.0;
    const Index K = 4000;
    Eigen::MatrixXd in_band(1, K);
    Eigen::MatrixXd out_band(1, K);
    for (Index k = 0; k < K; ++k) {
        const double t = static_cast<double>(k) / fs;
        in_band(0, k) = std::sin(2.0 * kPi * 0.3 * t + 0.4);
        out_band(0, k) = std::sin(2.0 * kPi * 1.2 * t);
    }
    const TimeSeries a = resample(TimeSeries(in_band, 1.0 / fs), 1.4);
    const TimeSeries b = resample(TimeSeries(out_band, 1.0 / fs), 1.4);
    CHECK(a.dt() == doctest::Approx(1.0 / 1.4));
    CHECK(a.samples() == doctest::Approx(1000.0 * 1.4).epsilon(0.002));
    const double edge = design_resample_filter(fs, 1.4).half_length_s;
    double worst_in = 0.0;
    double worst_out = 0.0;
    for (Index k = 0; k < a.samples(); ++k) {
        const double t = a.time(k);
        if (t < edge || t > 999.75 - edge) {
            continue;
        }
        worst_in = std::max(worst_in, std::abs(a(0, k) - std::sin(2.0 * kPi * 0.3 * t + 0.4)));
        worst_out = std::max(worst_out, std::abs(b(0, k)));
    }
    CHECK(worst_in < 1e-3);
    CHECK(worst_out < 1e-3);
}

TEST_CASE("resampling edge cases") {
    const auto data = test::benchmark_impulse(1.0, 100);
    const TimeSeries same = resample(data.y, 4.0);
    CHECK((same.data() - data.y.data()).norm() == 0.0);
    CHECK_THROWS_AS(resample(data.y, 8.0), InputError);
    CHECK_THROWS_AS(resample(data.y, 0.0), InputError);
}
