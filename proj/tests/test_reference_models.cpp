#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include <boost/numeric/odeint.hpp>

#include "test_support.hpp"
#include "tdmdc/errors.hpp"
#include "tdmdc/reference_models.hpp"
#include "tdmdc/signals.hpp"

using namespace tdmdc;
using tdmdc::test::kPi;

TEST_CASE("benchmark chain matches closed-form frequencies and Rayleigh damping") {
    const auto modes = analytic_modes(build_6dof());
    const auto f = test::chain_frequencies_hz();
    const auto z = test::chain_damping();
    REQUIRE(modes.size() == 6);
    for (std::size_t j = 0; j < 6; ++j) {
        CHECK(modes[j].order == static_cast<int>(j + 1));
        CHECK(modes[j].freq_hz == doctest::Approx(f[j]).epsilon(1e-12));
        CHECK(modes[j].damping == doctest::Approx(z[j]).epsilon(1e-10));
        CHECK(modes[j].omega == doctest::Approx(2.0 * kPi * f[j]).epsilon(1e-12));
    }
}

TEST_CASE("benchmark modal table to four decimals") {
    const double f_table[] = {0.0767, 0.2257, 0.3616, 0.4765, 0.5637, 0.6181};
    const double z_table[] = {0.0208, 0.0071, 0.0045, 0.0035, 0.0030, 0.0028};
    const auto modes = analytic_modes(build_6dof());
    for (std::size_t j = 0; j < 6; ++j) {
        CHECK(std::abs(modes[j].freq_hz - f_table[j]) <= 5e-5);
        CHECK(std::abs(modes[j].damping - z_table[j]) <= 5e-5);
    }
}

TEST_CASE("mode shapes are undamped chain eigenvectors with the agreed normalisation") {
    const auto model = build_6dof();
    const auto modes = analytic_modes(model);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(model.stiffness);
    for (std::size_t j = 0; j < 6; ++j) {
        const Eigen::VectorXcd& s = modes[j].shape;
        CHECK(s.norm() == doctest::Approx(1.0).epsilon(1e-12));
        Index big = 0;
        s.cwiseAbs().maxCoeff(&big);
        CHECK(std::abs(s(big).imag()) < 1e-12);
        CHECK(s(big).real() > 0.0);
        const Eigen::VectorXd v = es.eigenvectors().col(static_cast<Index>(j));
        const double overlap = std::abs(v.cast<std::complex<double>>().dot(s));
        CHECK(overlap == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("model validation") {
    auto bad = build_6dof();
    bad.mass(0, 1) = 0.5;
    CHECK_THROWS_AS(bad.validate(), InputError);

    auto neg = build_6dof();
    neg.mass(2, 2) = -1.0;
    CHECK_THROWS_AS(neg.validate(), InputError);

    auto soft = build_6dof();
    soft.stiffness(0, 0) = -10.0;
    CHECK_THROWS_AS(soft.validate(), InputError);

    LtiSecondOrderModel mismatch{Eigen::MatrixXd::Identity(2, 2), Eigen::MatrixXd::Zero(3, 3),
                                 Eigen::MatrixXd::Identity(2, 2)};
    CHECK_THROWS_AS(mismatch.validate(), InputError);
    CHECK_THROWS_AS(build_chain(0, 1.0, 1.0, 0.0, 0.0), InputError);
}

TEST_CASE("over-damped modes are rejected") {
    LtiSecondOrderModel m{Eigen::MatrixXd::Identity(1, 1), Eigen::MatrixXd::Constant(1, 1, 10.0),
                          Eigen::MatrixXd::Identity(1, 1)};
    CHECK_THROWS_AS(analytic_modes(m), NumericalError);
}

TEST_CASE("zero-order-hold simulation agrees with adaptive Runge-Kutta integration") {
    namespace odeint = boost::numeric::odeint;
    using State = std::vector<double>;
    const auto model = build_6dof();
    const double dt = 0.25;
    const Index K = 401;
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> ud(-1.0, 1.0);
    Eigen::MatrixXd u = Eigen::MatrixXd::Zero(6, K);
    for (Index k = 0; k < K; ++k) {
        u(0, k) = ud(rng);
        u(5, k) = 0.5 * ud(rng);
    }
    const TimeSeries excitation(u, dt);
    const TimeSeries y = simulate(model, excitation);

    const Eigen::MatrixXd Minv = model.mass.inverse();
    State x(12, 0.0);
    Eigen::VectorXd force(6);
    auto rhs = [&](const State& s, State& ds, double) {
        Eigen::Map<const Eigen::VectorXd> q(s.data(), 6);
        Eigen::Map<const Eigen::VectorXd> v(s.data() + 6, 6);
        const Eigen::VectorXd acc = Minv * (force - model.damping * v - model.stiffness * q);
        for (int i = 0; i < 6; ++i) {
            ds[i] = v(i);
            ds[6 + i] = acc(i);
        }
    };
    auto stepper = odeint::make_controlled(1e-13, 1e-13, odeint::runge_kutta_dopri5<State>());
    double worst = 0.0;
    for (Index k = 0; k < K; ++k) {
        for (int i = 0; i < 6; ++i) {
            worst = std::max(worst, std::abs(x[static_cast<std::size_t>(i)] - y(i, k)));
        }
        force = u.col(k);
        odeint::integrate_adaptive(stepper, rhs, x, k * dt, (k + 1) * dt, dt / 8);
    }
    CHECK(worst <= 1e-8);
}

TEST_CASE("simulation honours an initial state") {
    const auto model = build_6dof();
    Eigen::VectorXd x0 = Eigen::VectorXd::Zero(12);
    x0(3) = 1.0;
    const TimeSeries y = simulate(model, TimeSeries::zeros(6, 5, 0.25), x0);
    CHECK(y(3, 0) == doctest::Approx(1.0));
    CHECK(y(0, 0) == 0.0);
    CHECK_THROWS_AS(simulate(model, TimeSeries::zeros(5, 5, 0.25)), InputError);
    CHECK_THROWS_AS(simulate(model, TimeSeries::zeros(6, 5, 0.25), Eigen::VectorXd::Ones(3)), InputError);
}

TEST_CASE("zero excitation gives a zero response") {
    const TimeSeries y = simulate(build_6dof(), TimeSeries::zeros(6, 50, 0.25));
    CHECK(y.data().cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("receptance matches modal superposition") {
    const auto model = build_6dof();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(model.stiffness);
    const std::vector<double> grid = {0.0, 0.1, 0.4821, 1.3, 2.5, 3.9};
    const auto H = analytic_frf(model, grid);
    REQUIRE(H.size() == grid.size());
    for (std::size_t g = 0; g < grid.size(); ++g) {
        const double w = grid[g];
        Eigen::MatrixXcd expected = Eigen::MatrixXcd::Zero(6, 6);
        for (Index j = 0; j < 6; ++j) {
            const double wj2 = es.eigenvalues()(j);
            const double cj = 0.02 + 1e-4 * wj2;
            const Eigen::VectorXd v = es.eigenvectors().col(j);
            const std::complex<double> denom(wj2 - w * w, w * cj);
            expected += (v * v.transpose()).cast<std::complex<double>>() / denom;
        }
        CHECK((H[g] - expected).norm() <= 1e-9 * expected.norm());
    }
}

TEST_CASE("receptance rejects a singular dynamic stiffness") {
    LtiSecondOrderModel m{Eigen::MatrixXd::Identity(1, 1), Eigen::MatrixXd::Zero(1, 1),
                          Eigen::MatrixXd::Identity(1, 1)};
    const std::vector<double> grid = {1.0};
    CHECK_THROWS_AS(analytic_frf(m, grid), NumericalError);
}

TEST_CASE("companion and zero-order-hold forms") {
    const auto model = build_6dof();
    const StateSpace c = companion_form(model);
    CHECK(c.a.rows() == 12);
    CHECK(c.b.cols() == 6);
    const StateSpace d = discretize_zoh(model, 0.25);
    Eigen::ComplexEigenSolver<Eigen::MatrixXd> ec(c.a);
    Eigen::ComplexEigenSolver<Eigen::MatrixXd> ed(d.a);
    std::vector<std::complex<double>> mapped;
    std::vector<std::complex<double>> discrete;
    for (Index i = 0; i < 12; ++i) {
        mapped.push_back(std::exp(ec.eigenvalues()(i) * 0.25));
        discrete.push_back(ed.eigenvalues()(i));
    }
    CHECK(test::max_matched_distance(mapped, discrete) < 1e-12);
    CHECK_THROWS_AS(discretize_zoh(model, 0.0), InputError);
}

namespace {

// y_k + a1 y_{k-1} + a2 y_{k-2} = b1 u_{k-1} + b2 u_{k-2}, scalar.
ArxModel scalar_arx(double a1, double a2, double b1, double b2) {
    ArxModel m;
    m.a = {Eigen::MatrixXd::Constant(1, 1, a1), Eigen::MatrixXd::Constant(1, 1, a2)};
    m.b = {Eigen::MatrixXd::Constant(1, 1, b1), Eigen::MatrixXd::Constant(1, 1, b2)};
    m.dt = 0.5;
    return m;
}

TimeSeries white_input(Index K, std::uint64_t seed, Index burst = -1) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd;
    Eigen::MatrixXd u = Eigen::MatrixXd::Zero(1, K);
    for (Index k = 0; k < (burst < 0 ? K : burst); ++k) {
        u(0, k) = nd(rng);
    }
    return TimeSeries(u, 0.5);
}

}  // namespace

TEST_CASE("ARX simulation follows the difference equation") {
    const ArxModel m = scalar_arx(-1.2, 0.5, 0.7, -0.3);
    const TimeSeries u = white_input(50, 9);
    const TimeSeries y = arx_simulate(m, u);
    CHECK(y(0, 0) == 0.0);
    CHECK(y(0, 1) == doctest::Approx(0.7 * u(0, 0)));
    for (Index k = 2; k < 50; ++k) {
        const double expected = 1.2 * y(0, k - 1) - 0.5 * y(0, k - 2) + 0.7 * u(0, k - 1) - 0.3 * u(0, k - 2);
        CHECK(y(0, k) == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("ARX fit recovers the generating coefficients") {
    const ArxModel truth = scalar_arx(-1.2, 0.5, 0.7, -0.3);
    const TimeSeries u = white_input(400, 4);
    const TimeSeries y = arx_simulate(truth, u);
    const ArxModel est = arx_fit(y, u, 2, 2);
    CHECK(est.full_rank());
    CHECK(est.a[0](0, 0) == doctest::Approx(-1.2).epsilon(1e-10));
    CHECK(est.a[1](0, 0) == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(est.b[0](0, 0) == doctest::Approx(0.7).epsilon(1e-10));
    CHECK(est.b[1](0, 0) == doctest::Approx(-0.3).epsilon(1e-10));
}

TEST_CASE("ARX state matrix eigenvalues are the characteristic roots") {
    const ArxModel m = scalar_arx(-1.2, 0.5, 0.7, -0.3);
    const Eigen::MatrixXd A = arx_state_matrix(m);
    CHECK(A.rows() == 3);
    CHECK(arx_input_matrix(m).cols() == 2);
    Eigen::ComplexEigenSolver<Eigen::MatrixXd> es(A);
    // z^2 - 1.2 z + 0.5 = 0
    const std::complex<double> disc = std::sqrt(std::complex<double>(1.44 - 2.0, 0.0));
    std::vector<std::complex<double>> expected = {(1.2 + disc) / 2.0, (1.2 - disc) / 2.0, 0.0};
    std::vector<std::complex<double>> got(es.eigenvalues().data(), es.eigenvalues().data() + 3);
    CHECK(test::max_matched_distance(expected, got) < 1e-12);
}

TEST_CASE("ARX frequency response matches spectral division of a simulated record") {
    const ArxModel m = scalar_arx(-1.2, 0.5, 0.7, -0.3);
    const TimeSeries u = white_input(600, 12, 40);
    const TimeSeries y = arx_simulate(m, u);
    REQUIRE(std::abs(y(0, 599)) < 1e-14);
    std::vector<double> grid;
    for (int i = 1; i < 12; ++i) {
        grid.push_back(0.5 * i);
    }
    const auto H = arx_frf(m, grid);
    for (std::size_t g = 0; g < grid.size(); ++g) {
        std::complex<double> Y = 0.0;
        std::complex<double> U = 0.0;
        for (Index k = 0; k < 600; ++k) {
            const std::complex<double> e = std::polar(1.0, -grid[g] * 0.5 * static_cast<double>(k));
            Y += y(0, k) * e;
            U += u(0, k) * e;
        }
        CHECK(std::abs(H[g](0, 0) - Y / U) <= 1e-9 * std::abs(Y / U));
    }
    const std::vector<double> outside = {7.0};
    CHECK_THROWS_AS(arx_frf(m, outside), InputError);
}

TEST_CASE("ARX frequency response is NaN at a pole on the unit circle") {
    // y_k - y_{k-2} = u_{k-1}: A(q) = 1 - q^-2 vanishes at w dt = 0 and pi
    ArxModel m = scalar_arx(0.0, -1.0, 1.0, 0.0);
    const std::vector<double> grid = {0.0, 1.0};
    const auto H = arx_frf(m, grid);
    CHECK(std::isnan(H[0](0, 0).real()));
    CHECK(std::isfinite(H[1](0, 0).real()));
}

TEST_CASE("ARX fit input checks and rank reporting") {
    const TimeSeries u = white_input(30, 1);
    const TimeSeries y = arx_simulate(scalar_arx(-1.2, 0.5, 0.7, -0.3), u);
    CHECK_THROWS_AS(arx_fit(y, u, 0, 2), InputError);
    CHECK_THROWS_AS(arx_fit(y, u, 12, 12), InputError);
    const TimeSeries zero_u = TimeSeries::zeros(1, 30, 0.5);
    const ArxModel deficient = arx_fit(y, zero_u, 2, 2);
    CHECK_FALSE(deficient.full_rank());
    ArxFitOptions strict;
    strict.require_full_rank = true;
    CHECK_THROWS_AS(arx_fit(y, zero_u, 2, 2, strict), NumericalError);
}
