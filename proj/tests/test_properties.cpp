#include <doctest.h>

#include <bit>
#include <cmath>
#include <random>
#include <sstream>

#include "test_support.hpp"
#include "tdmdc/cli/csv_io.hpp"
#include "tdmdc/dmdc.hpp"
#include "tdmdc/embedding.hpp"
#include "tdmdc/modal.hpp"
#include "tdmdc/signals.hpp"

using namespace tdmdc;
using tdmdc::test::kPi;

namespace {

constexpr int kCases = 120;

int uniform_int(std::mt19937_64& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

}  // namespace

TEST_CASE("property: identified eigenvalues are closed under conjugation") {
    std::mt19937_64 rng(101);
    for (int c = 0; c < kCases; ++c) {
        const Index n = uniform_int(rng, 1, 4);
        const Index m = uniform_int(rng, 1, 2);
        const int ta = uniform_int(rng, 1, 4);
        const int tb = uniform_int(rng, 1, 3);
        const Index K = uniform_int(rng, 60, 200);
        const TimeSeries y(test::random_matrix(rng, n, K), 0.1);
        const TimeSeries u(test::random_matrix(rng, m, K), 0.1);
        const DmdcModel model = fit(build_snapshots(y, u, ta, tb));
        const auto& ev = model.eigvals;
        const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
        for (Index i = 0; i < ev.size(); ++i) {
            double nearest = INFINITY;
            for (Index j = 0; j < ev.size(); ++j) {
                nearest = std::min(nearest, std::abs(ev(j) - std::conj(ev(i))));
            }
            CHECK(nearest <= 1e-9 * scale);
        }
        Index upper = 0;
        for (Index i = 0; i < ev.size(); ++i) {
            upper += (std::abs(ev(i)) > 1e-12 && ev(i).imag() > 0.0) ? 1 : 0;
        }
        CHECK(to_modes(model).size() == static_cast<std::size_t>(upper));
    }
}

TEST_CASE("property: MAC is bounded, symmetric and scale invariant") {
    std::mt19937_64 rng(202);
    for (int c = 0; c < kCases; ++c) {
        const Index n = uniform_int(rng, 1, 12);
        const Eigen::VectorXcd a = test::random_complex(rng, n);
        const Eigen::VectorXcd b = test::random_complex(rng, n);
        const std::complex<double> alpha(uniform(rng, -5.0, 5.0), uniform(rng, -5.0, 5.0));
        const double v = mac(a, b);
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
        CHECK(mac(b, a) == doctest::Approx(v).epsilon(1e-12));
        CHECK(mac(a, alpha * b) == doctest::Approx(v).epsilon(1e-10));
        CHECK(mac(alpha * a, a) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("property: shifted snapshots are the next delay columns") {
    std::mt19937_64 rng(303);
    for (int c = 0; c < kCases; ++c) {
        const Index n = uniform_int(rng, 1, 5);
        const Index m = uniform_int(rng, 0, 2);
        const int ta = uniform_int(rng, 1, 8);
        const int tb = uniform_int(rng, 1, 4);
        const Index K = uniform_int(rng, std::max(ta, tb) + 3, 60);
        const TimeSeries y(test::random_matrix(rng, n, K), 0.5);
        std::optional<TimeSeries> u;
        if (m > 0) {
            u = TimeSeries(test::random_matrix(rng, m, K), 0.5);
        }
        const SnapshotSet s = build_snapshots(y, u, ta, tb);
        const Eigen::MatrixXd X = s.X();
        const Eigen::MatrixXd Xp = s.X_prime();
        const Index N = s.columns();
        CHECK(N == K - 1);
        CHECK((Xp.leftCols(N - 1) - X.rightCols(N - 1)).norm() == 0.0);
        CHECK((Xp.topRows(n) - y.data().rightCols(K - 1)).norm() == 0.0);
        // lower delay blocks of X' repeat the upper blocks of X
        CHECK((Xp.bottomRows(n * ta) - X.topRows(n * ta)).norm() == 0.0);
        if (m > 0) {
            const Eigen::MatrixXd G = s.Gamma();
            CHECK((G.topRows(m) - u->data().leftCols(K - 1)).norm() == 0.0);
        }
    }
}

TEST_CASE("property: eigenvalue to modal parameter mapping round-trips") {
    std::mt19937_64 rng(404);
    for (int c = 0; c < kCases; ++c) {
        const double dt = uniform(rng, 0.001, 1.0);
        const double f = uniform(rng, 0.01, 0.45) / dt;
        const double z = uniform(rng, -0.3, 0.95);
        const double w = 2.0 * kPi * f;
        const std::complex<double> s(-z * w, w * std::sqrt(1.0 - z * z));
        const std::vector<std::complex<double>> mu = {std::exp(s * dt)};
        const auto modes = modes_from_eigenvalues(mu, dt);
        REQUIRE(modes.size() == 1);
        CHECK(modes[0].freq_hz == doctest::Approx(f).epsilon(1e-9));
        CHECK(modes[0].damping == doctest::Approx(z).epsilon(1e-9).scale(1.0));
        CHECK(std::abs(std::exp(modes[0].s * dt) - mu[0]) <= 1e-12 * std::abs(mu[0]));
        CHECK(modes[0].negative_damping == (z < 0.0));
    }
}

TEST_CASE("property: added noise meets the requested SNR within 0.5 dB") {
    std::mt19937_64 rng(505);
    for (int c = 0; c < kCases; ++c) {
        const Index n = uniform_int(rng, 1, 4);
        const Index K = uniform_int(rng, 4000, 8000);
        const double snr = uniform(rng, 0.0, 40.0);
        Eigen::MatrixXd x(n, K);
        for (Index ch = 0; ch < n; ++ch) {
            const double f = uniform(rng, 0.01, 0.2);
            const double amp = std::pow(10.0, uniform(rng, -3.0, 3.0));
            for (Index k = 0; k < K; ++k) {
                x(ch, k) = amp * std::sin(2.0 * kPi * f * static_cast<double>(k) + ch);
            }
        }
        const TimeSeries clean(x, 0.25);
        const TimeSeries noisy = add_noise(clean, snr, rng());
        for (Index ch = 0; ch < n; ++ch) {
            const double ps = x.row(ch).squaredNorm();
            const double pn = (noisy.data().row(ch) - x.row(ch)).squaredNorm();
            CHECK(std::abs(10.0 * std::log10(ps / pn) - snr) <= 0.5);
        }
    }
}

TEST_CASE("property: time-series CSV round trip is lossless") {
    std::mt19937_64 rng(606);
    std::uniform_int_distribution<std::uint64_t> bits;
    for (int c = 0; c < kCases; ++c) {
        const Index n = uniform_int(rng, 1, 5);
        const Index K = uniform_int(rng, 2, 80);
        const double dt = std::pow(2.0, uniform_int(rng, -12, 2)) * (c % 3 == 0 ? 1.0 : 0.1);
        const double t0 = uniform_int(rng, -20, 20) * dt;
        Eigen::MatrixXd x(n, K);
        for (Index ch = 0; ch < n; ++ch) {
            for (Index k = 0; k < K; ++k) {
                double v = 0.0;
                do {
                    v = std::bit_cast<double>(bits(rng));
                } while (!std::isfinite(v));
                x(ch, k) = (k % 4 == 0) ? uniform(rng, -1.0, 1.0) : v;
            }
        }
        const TimeSeries series(x, dt, t0);
        std::stringstream buf;
        cli::write_time_series(buf, series);
        const TimeSeries back = cli::read_time_series(buf);
        CHECK(back.dt() == series.dt());
        CHECK(back.t0() == series.t0());
        REQUIRE(back.samples() == K);
        REQUIRE(back.channels() == n);
        bool exact = true;
        for (Index ch = 0; ch < n; ++ch) {
            for (Index k = 0; k < K; ++k) {
                exact = exact && std::bit_cast<std::uint64_t>(back(ch, k)) ==
                                     std::bit_cast<std::uint64_t>(series(ch, k));
            }
        }
        CHECK(exact);
    }
}
