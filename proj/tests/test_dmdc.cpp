#include <doctest.h>

#include <cmath>
#include <random>

#include "../src/linalg.hpp"
#include "test_support.hpp"
#include "tdmdc/dmdc.hpp"
#include "tdmdc/errors.hpp"
#include "tdmdc/modal.hpp"

using namespace tdmdc;

namespace {

// Rows: block i holds a_{c+s-i}, zero outside the record.
Eigen::MatrixXd explicit_embedding(const Eigen::MatrixXd& a, Index s, Index l, Index first, Index count) {
    Eigen::MatrixXd e = Eigen::MatrixXd::Zero(a.rows() * l, count);
    for (Index c = 0; c < count; ++c) {
        for (Index i = 0; i < l; ++i) {
            const Index k = first + c + s - i;
            if (k >= 0 && k < a.cols()) {
                e.block(i * a.rows(), c, a.rows(), 1) = a.col(k);
            }
        }
    }
    return e;
}

std::vector<std::complex<double>> analytic_poles(double dt) {
    std::vector<std::complex<double>> z;
    for (const auto& m : analytic_modes(build_6dof())) {
        const std::complex<double> s(-m.damping * m.omega, m.omega * std::sqrt(1.0 - m.damping * m.damping));
        z.push_back(std::exp(s * dt));
        z.push_back(std::conj(std::exp(s * dt)));
    }
    return z;
}

std::vector<std::complex<double>> nonzero(const Eigen::VectorXcd& v, double floor = 1e-8) {
    std::vector<std::complex<double>> out;
    for (Index i = 0; i < v.size(); ++i) {
        if (std::abs(v(i)) > floor) {
            out.push_back(v(i));
        }
    }
    return out;
}

}  // namespace

TEST_CASE("entropy increments") {
    const std::vector<double> s = {3.0, 1.0, 0.0};
    const auto d = entropy_increments(s);
    REQUIRE(d.size() == 3);
    CHECK(d[0] == doctest::Approx(-0.75 * std::log(0.75)));
    CHECK(d[1] == doctest::Approx(-0.25 * std::log(0.25)));
    CHECK(d[2] == 0.0);
}

TEST_CASE("singular-entropy rank on constructed spectra") {
    const std::vector<double> flat = {1.0, 1.0, 1.0, 1.0};
    CHECK(singular_entropy_rank(flat) == 4);
    const std::vector<double> single = {1.0, 1e-14, 1e-14};
    CHECK(singular_entropy_rank(single) == 1);
    const std::vector<double> two = {1.0, 0.8, 1e-9, 1e-10, 1e-11};
    CHECK(singular_entropy_rank(two) == 2);
    // a coarse threshold stops earlier
    const std::vector<double> tail = {1.0, 0.5, 0.01, 0.001};
    CHECK(singular_entropy_rank(tail, 1e-3) == 4);
    CHECK(singular_entropy_rank(tail, 0.1) == 2);
}

TEST_CASE("noiseless benchmark: entropy ranks") {
    const auto data = test::benchmark_impulse();
    const DmdcModel a = fit(build_snapshots(data.y, data.u, 1, 2));
    CHECK(a.ranks.r == 12);
    CHECK(a.ranks.p == 14);
    const DmdcModel b = fit(build_snapshots(data.y, data.u, 2, 2));
    CHECK(b.ranks.r == 13);
    CHECK(b.ranks.p == 15);
    CHECK(b.ranks.entropy_increments.size() == static_cast<std::size_t>(b.sigma_in.size()));
}

TEST_CASE("noiseless benchmark: eigenvalues are the exact discrete poles") {
    const auto data = test::benchmark_impulse();
    for (int tau : {1, 2, 5}) {
        const DmdcModel m = fit(build_snapshots(data.y, data.u, tau, 2));
        const auto got = nonzero(m.eigvals);
        REQUIRE(got.size() >= 12);
        CHECK(test::max_matched_distance(analytic_poles(0.25), got) < 1e-9);
        for (Index i = 1; i < m.eigvals.size(); ++i) {
            CHECK(std::abs(m.eigvals(i - 1)) >= std::abs(m.eigvals(i)) - 1e-14);
        }
    }
}

TEST_CASE("DMDc and ARX share the nonzero spectrum") {
    const auto data = test::benchmark_impulse();
    const DmdcModel m = fit(build_snapshots(data.y, data.u, 2, 2));
    const ArxModel arx = arx_fit(data.y, data.u, 2, 2);
    Eigen::ComplexEigenSolver<Eigen::MatrixXd> es(arx_state_matrix(arx));
    const auto a = nonzero(es.eigenvalues(), 1e-6);
    const auto d = nonzero(m.eigvals, 1e-6);
    REQUIRE(a.size() == d.size());
    CHECK(test::max_matched_distance(d, a) < 1e-6);
}

TEST_CASE("one-step reconstruction is exact on noiseless data") {
    const auto data = test::benchmark_impulse();
    const SnapshotSet s = build_snapshots(data.y, data.u, 2, 2);
    const DmdcModel m = fit(s);
    const Reconstruction r = reconstruct(m, s);
    CHECK(r.relative_residual < 1e-6);
    CHECK(r.prediction.channels() == 6);
    CHECK(r.prediction.samples() == s.columns());
}

TEST_CASE("direct and Gram routes agree") {
    const auto data = test::benchmark_impulse(1.0, 600);
    struct Case {
        int tau_a;
        Index samples;
    };
    // row-space Gram (short state) and column-space Gram (state taller than the record)
    for (const Case c : {Case{3, 600}, Case{60, 200}}) {
        const SnapshotSet s = build_snapshots(data.y.slice(0, c.samples), data.u.slice(0, c.samples), c.tau_a, 2);
        FitOptions direct{RankPolicy::fixed(12, 13), SvdRoute::Direct};
        FitOptions gram{RankPolicy::fixed(12, 13), SvdRoute::Gram};
        const DmdcModel a = fit(s, direct);
        const DmdcModel b = fit(s, gram);
        CHECK_FALSE(a.used_gram);
        CHECK(b.used_gram);
        CHECK(test::max_matched_distance(nonzero(a.eigvals), nonzero(b.eigvals)) < 1e-7);
        CHECK((a.sigma_out.head(12) - b.sigma_out.head(12)).norm() < 1e-6 * a.sigma_out(0));
        CHECK(reconstruct(b, s).relative_residual ==
              doctest::Approx(reconstruct(a, s).relative_residual).epsilon(1e-6));
    }
}

TEST_CASE("free-decay window drops the input block") {
    const auto data = test::benchmark_impulse();
    const SnapshotSet s = build_snapshots(data.y, data.u, 2, 2).free_decay();
    const DmdcModel m = fit(s, {RankPolicy::fixed(12, 12)});
    CHECK(test::max_matched_distance(analytic_poles(0.25), nonzero(m.eigvals)) < 1e-9);
}

TEST_CASE("rank deflation and degenerate data") {
    const auto data = test::benchmark_impulse(1.0, 400);
    const SnapshotSet s = build_snapshots(data.y, data.u, 2, 2);
    const DmdcModel m = fit(s, {RankPolicy::fixed(40, 40)});
    CHECK(m.ranks.r < 40);
    CHECK_FALSE(m.warnings.empty());

    const TimeSeries zeros = TimeSeries::zeros(6, 100, 0.25);
    CHECK_THROWS_AS(fit(build_snapshots(zeros, zeros, 2, 2)), NumericalError);
    CHECK_THROWS_AS(fit(s, {RankPolicy::fixed(0, 3)}), ConfigError);
}

TEST_CASE("input scaling rescales the reduced input operator only") {
    const auto a = test::benchmark_impulse(1.0);
    const SnapshotSet s = build_snapshots(a.y, a.u, 2, 2);
    const DmdcModel base = fit(s);
    const SnapshotSet scaled = build_snapshots(a.y, a.u.scaled(10.0), 2, 2);
    const DmdcModel m = fit(scaled, {RankPolicy::fixed(base.ranks.r, base.ranks.p)});
    CHECK((base.eigvals - m.eigvals).cwiseAbs().maxCoeff() < 1e-10);
    // U_hat is shared up to column signs; compare B through the invariant U_hat B
    const Eigen::MatrixXd b0 = base.U_hat * base.B_reduced;
    const Eigen::MatrixXd b1 = m.U_hat * m.B_reduced;
    CHECK((b1 * 10.0 - b0).norm() <= 1e-8 * b0.norm());
}

TEST_CASE("Lanczos leading eigenpairs match the dense solver") {
    std::mt19937_64 rng(21);
    for (Index n : {30, 300}) {
        const Eigen::MatrixXd g = test::random_matrix(rng, n, n / 2);
        const Eigen::MatrixXd sym = g * g.transpose();
        const detail::SymEig full = detail::full_eigenpairs(sym);
        const detail::SymEig top = detail::top_eigenpairs(sym, 8);
        REQUIRE(top.values.size() == 8);
        for (Index i = 0; i < 8; ++i) {
            CHECK(top.values(i) == doctest::Approx(full.values(i)).epsilon(1e-9));
            CHECK(std::abs(top.vectors.col(i).dot(full.vectors.col(i))) == doctest::Approx(1.0).epsilon(1e-7));
        }
    }
}

TEST_CASE("lagged Gram kernels match explicit embeddings") {
    std::mt19937_64 rng(8);
    const Eigen::MatrixXd a = test::random_matrix(rng, 3, 40);
    const Eigen::MatrixXd b = test::random_matrix(rng, 2, 40);
    const Index first = 1;
    const Index count = 37;
    const Eigen::MatrixXd Ea = explicit_embedding(a, 1, 5, first, count);
    const Eigen::MatrixXd Eb = explicit_embedding(b, 0, 4, first, count);
    const Eigen::MatrixXd row = detail::lagged_row_gram(a, 1, 5, b, 0, 4, first, count);
    CHECK((row - Ea * Eb.transpose()).norm() < 1e-12 * (Ea.norm() * Eb.norm()));

    const Eigen::MatrixXd Ea0 = explicit_embedding(a, 0, 5, first, count);
    const Eigen::MatrixXd col = detail::lagged_column_gram(a, 1, a, 0, 5, first, count);
    CHECK((col - Ea.transpose() * Ea0).norm() < 1e-12 * Ea.norm() * Ea0.norm());

    const Eigen::MatrixXd m = test::random_matrix(rng, count, 4);
    const Eigen::MatrixXd prod = detail::lagged_product(a, 1, 5, first, count, m);
    CHECK((prod - Ea * m).norm() < 1e-12 * Ea.norm() * m.norm());
}
