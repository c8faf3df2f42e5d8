#include "tdmdc/dmdc.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "linalg.hpp"
#include "tdmdc/errors.hpp"

namespace tdmdc {

namespace {

constexpr double kDirectElementLimit = 2e5;
constexpr double kGramCutoff = 1e-7;

/// Factors shared by every route. Q = X' V~ S~^-1.
struct Factors {
    Eigen::MatrixXd u_hat;
    Eigen::VectorXd s_hat;
    Eigen::MatrixXd u1;
    Eigen::MatrixXd u2;
    Eigen::VectorXd s_tilde;
    Eigen::MatrixXd q;
    Eigen::VectorXd spectrum_out;
    Eigen::VectorXd spectrum_in;
};

Eigen::VectorXd sqrt_clipped(const Eigen::VectorXd& eig) {
    return eig.cwiseMax(0.0).cwiseSqrt();
}

Index count_above(const Eigen::VectorXd& s, Index limit, double rel) {
    if (s.size() == 0 || !(s(0) > 0.0)) {
        return 0;
    }
    Index k = 0;
    while (k < std::min<Index>(limit, s.size()) && s(k) > rel * s(0)) {
        ++k;
    }
    return k;
}

std::vector<double> to_vector(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

struct RankChoice {
    Index r = 0;
    Index p = 0;
};

RankChoice choose_ranks(const RankPolicy& policy, const Eigen::VectorXd& out,
                        const Eigen::VectorXd& in, RankSelection& record) {
    if (out.size() == 0 || in.size() == 0 || !(out(0) > 0.0) || !(in(0) > 0.0)) {
        throw NumericalError("fit: snapshot matrices are numerically zero");
    }
    RankChoice c;
    if (policy.automatic) {
        const auto sv_out = to_vector(out);
        const auto sv_in = to_vector(in);
        c.r = singular_entropy_rank(sv_out, policy.entropy_threshold);
        c.p = singular_entropy_rank(sv_in, policy.entropy_threshold);
        record.entropy_increments = entropy_increments(sv_in);
        record.variation.clear();
        for (std::size_t i = 0; i < record.entropy_increments.size(); ++i) {
            const double next =
                i + 1 < record.entropy_increments.size() ? record.entropy_increments[i + 1] : 0.0;
            record.variation.push_back(next - record.entropy_increments[i]);
        }
    } else {
        c.r = policy.r;
        c.p = policy.p;
    }
    return c;
}

void check_fixed(const RankPolicy& policy) {
    if (!policy.automatic && (policy.r < 1 || policy.p < 1)) {
        throw ConfigError("fit: fixed ranks must be at least 1");
    }
    if (policy.automatic && !(policy.entropy_threshold > 0.0)) {
        throw ConfigError("fit: entropy threshold must be positive");
    }
}

Factors direct_factors(const SnapshotSet& snaps, const FitOptions& opt, RankSelection& record,
                       std::vector<std::string>& warnings) {
    const Eigen::MatrixXd xp = snaps.X_prime();
    Eigen::MatrixXd omega(snaps.spec().state_rows() + snaps.spec().input_rows(), snaps.columns());
    omega.topRows(snaps.spec().state_rows()) = snaps.X();
    omega.bottomRows(snaps.spec().input_rows()) = snaps.Gamma();

    Eigen::BDCSVD<Eigen::MatrixXd> svd_out(xp, Eigen::ComputeThinU);
    Eigen::BDCSVD<Eigen::MatrixXd> svd_in(omega, Eigen::ComputeThinU | Eigen::ComputeThinV);
    Factors f;
    f.spectrum_out = svd_out.singularValues();
    f.spectrum_in = svd_in.singularValues();
    const RankChoice want = choose_ranks(opt.ranks, f.spectrum_out, f.spectrum_in, record);
    const Index r = count_above(f.spectrum_out, want.r, opt.pinv_cutoff);
    const Index p = count_above(f.spectrum_in, want.p, opt.pinv_cutoff);
    if (r < std::min<Index>(want.r, f.spectrum_out.size()) ||
        p < std::min<Index>(want.p, f.spectrum_in.size())) {
        warnings.push_back("ranks deflated to r = " + std::to_string(r) + ", p = " +
                           std::to_string(p) + " by the pseudo-inverse cutoff");
    }
    if (r == 0 || p == 0) {
        throw NumericalError("fit: snapshot matrices are numerically zero");
    }
    f.u_hat = svd_out.matrixU().leftCols(r);
    f.s_hat = f.spectrum_out.head(r);
    f.s_tilde = f.spectrum_in.head(p);
    const Index rows_x = snaps.spec().state_rows();
    f.u1 = svd_in.matrixU().topLeftCorner(rows_x, p);
    f.u2 = svd_in.matrixU().bottomLeftCorner(snaps.spec().input_rows(), p);
    f.q = xp * (svd_in.matrixV().leftCols(p) * f.s_tilde.cwiseInverse().asDiagonal());
    return f;
}

detail::SymEig gram_eig(const Eigen::MatrixXd& gram, const RankPolicy& policy, Index want) {
    if (policy.automatic) {
        return detail::full_eigenpairs(gram);
    }
    return detail::top_eigenpairs(gram, std::min(want, gram.rows()));
}

Factors gram_factors(const SnapshotSet& snaps, const FitOptions& opt, RankSelection& record,
                     std::vector<std::string>& warnings) {
    using detail::lagged_column_gram;
    using detail::lagged_product;
    using detail::lagged_row_gram;

    const EmbeddingSpec& spec = snaps.spec();
    const Eigen::MatrixXd& y = snaps.outputs();
    const Eigen::MatrixXd& u = snaps.inputs();
    const Index first = snaps.first_column();
    const Index count = snaps.columns();
    const Index depth = spec.tau_a + 1;
    const Index tb = spec.m > 0 ? spec.tau_b : 0;
    const Index rows_x = spec.state_rows();
    const Index rows_g = spec.input_rows();
    const Index rows_o = rows_x + rows_g;
    const double cutoff = std::max(opt.pinv_cutoff, kGramCutoff);
    const Index want_r = opt.ranks.automatic ? rows_x : opt.ranks.r;
    const Index want_p = opt.ranks.automatic ? rows_o : opt.ranks.p;

    Factors f;
    if (rows_o <= count) {
        const Eigen::MatrixXd gram_out = lagged_row_gram(y, 1, depth, y, 1, depth, first, count);
        Eigen::MatrixXd gram_in(rows_o, rows_o);
        gram_in.topLeftCorner(rows_x, rows_x) = lagged_row_gram(y, 0, depth, y, 0, depth, first, count);
        Eigen::MatrixXd c(rows_x, rows_o);
        c.leftCols(rows_x) = lagged_row_gram(y, 1, depth, y, 0, depth, first, count);
        if (rows_g > 0) {
            const Eigen::MatrixXd xg = lagged_row_gram(y, 0, depth, u, 0, tb, first, count);
            gram_in.topRightCorner(rows_x, rows_g) = xg;
            gram_in.bottomLeftCorner(rows_g, rows_x) = xg.transpose();
            gram_in.bottomRightCorner(rows_g, rows_g) = lagged_row_gram(u, 0, tb, u, 0, tb, first, count);
            c.rightCols(rows_g) = lagged_row_gram(y, 1, depth, u, 0, tb, first, count);
        }
        const detail::SymEig eo = gram_eig(gram_out, opt.ranks, want_r);
        const detail::SymEig ei = gram_eig(gram_in, opt.ranks, want_p);
        f.spectrum_out = sqrt_clipped(eo.values);
        f.spectrum_in = sqrt_clipped(ei.values);
        const RankChoice want = choose_ranks(opt.ranks, f.spectrum_out, f.spectrum_in, record);
        const Index r = count_above(f.spectrum_out, want.r, cutoff);
        const Index p = count_above(f.spectrum_in, want.p, cutoff);
        if (r == 0 || p == 0) {
            throw NumericalError("fit: snapshot matrices are numerically zero");
        }
        if (r < std::min(want.r, rows_x) || p < std::min(want.p, rows_o)) {
            warnings.push_back("ranks deflated to r = " + std::to_string(r) + ", p = " +
                               std::to_string(p) + " by the pseudo-inverse cutoff");
        }
        f.u_hat = eo.vectors.leftCols(r);
        f.s_hat = f.spectrum_out.head(r);
        f.s_tilde = f.spectrum_in.head(p);
        const Eigen::MatrixXd u_tilde = ei.vectors.leftCols(p);
        f.u1 = u_tilde.topRows(rows_x);
        f.u2 = u_tilde.bottomRows(rows_g);
        f.q = c * (u_tilde * f.s_tilde.array().square().inverse().matrix().asDiagonal());
        return f;
    }

    Eigen::MatrixXd gram_in = lagged_column_gram(y, 0, y, 0, depth, first, count);
    if (rows_g > 0) {
        gram_in += lagged_column_gram(u, 0, u, 0, tb, first, count);
    }
    const Eigen::MatrixXd gram_out = lagged_column_gram(y, 1, y, 1, depth, first, count);
    const detail::SymEig eo = gram_eig(gram_out, opt.ranks, want_r);
    const detail::SymEig ei = gram_eig(gram_in, opt.ranks, want_p);
    f.spectrum_out = sqrt_clipped(eo.values);
    f.spectrum_in = sqrt_clipped(ei.values);
    const RankChoice want = choose_ranks(opt.ranks, f.spectrum_out, f.spectrum_in, record);
    const Index r = count_above(f.spectrum_out, want.r, cutoff);
    const Index p = count_above(f.spectrum_in, want.p, cutoff);
    if (r == 0 || p == 0) {
        throw NumericalError("fit: snapshot matrices are numerically zero");
    }
    if (r < std::min(want.r, count) || p < std::min(want.p, count)) {
        warnings.push_back("ranks deflated to r = " + std::to_string(r) + ", p = " +
                           std::to_string(p) + " by the pseudo-inverse cutoff");
    }
    f.s_hat = f.spectrum_out.head(r);
    f.s_tilde = f.spectrum_in.head(p);
    const Eigen::MatrixXd v_hat = eo.vectors.leftCols(r) * f.s_hat.cwiseInverse().asDiagonal();
    const Eigen::MatrixXd v_tilde = ei.vectors.leftCols(p) * f.s_tilde.cwiseInverse().asDiagonal();
    f.u_hat = lagged_product(y, 1, depth, first, count, v_hat);
    f.q = lagged_product(y, 1, depth, first, count, v_tilde);
    f.u1 = lagged_product(y, 0, depth, first, count, v_tilde);
    f.u2 = rows_g > 0 ? lagged_product(u, 0, tb, first, count, v_tilde)
                      : Eigen::MatrixXd(0, p);
    return f;
}

}  // namespace

std::vector<double> entropy_increments(std::span<const double> singular_values) {
    double total = 0.0;
    for (double s : singular_values) {
        if (!(s >= 0.0) || !std::isfinite(s)) {
            throw InputError("entropy: singular values must be finite and non-negative");
        }
        total += s;
    }
    if (!(total > 0.0)) {
        throw InputError("entropy: all singular values are zero");
    }
    std::vector<double> out;
    out.reserve(singular_values.size());
    for (double s : singular_values) {
        const double q = s / total;
        out.push_back(q > 0.0 ? -q * std::log(q) : 0.0);
    }
    return out;
}

Index singular_entropy_rank(std::span<const double> singular_values, double threshold) {
    const std::vector<double> de = entropy_increments(singular_values);
    const auto l = static_cast<Index>(de.size());
    for (Index i = 0; i < l; ++i) {
        const double next = i + 1 < l ? de[static_cast<std::size_t>(i + 1)] : 0.0;
        const double cur = de[static_cast<std::size_t>(i)];
        if (cur < threshold && std::abs(next - cur) < threshold) {
            return std::max<Index>(1, i);
        }
    }
    return l;
}

DmdcModel fit(const SnapshotSet& snapshots, const FitOptions& options) {
    check_fixed(options.ranks);
    const EmbeddingSpec& spec = snapshots.spec();
    const Index rows_x = spec.state_rows();
    const Index rows_o = rows_x + spec.input_rows();
    const Index count = snapshots.columns();

    DmdcModel model;
    model.dt = snapshots.dt();
    model.spec = spec;
    if (!options.ranks.automatic && count < std::max(options.ranks.r, options.ranks.p) + 1) {
        throw InputError("fit: need more snapshot columns than the requested ranks");
    }

    bool gram = options.route == SvdRoute::Gram;
    if (options.route == SvdRoute::Auto) {
        gram = static_cast<double>(rows_o) * static_cast<double>(count) > kDirectElementLimit;
    }
    model.used_gram = gram;
    Factors f = gram ? gram_factors(snapshots, options, model.ranks, model.warnings)
                     : direct_factors(snapshots, options, model.ranks, model.warnings);

    const Index r = f.s_hat.size();
    const Index p = f.s_tilde.size();
    model.ranks.r = r;
    model.ranks.p = p;
    if (p < r) {
        model.warnings.push_back("input-side rank p = " + std::to_string(p) +
                                 " is below the output-side rank r = " + std::to_string(r));
    }
    model.sigma_out = f.spectrum_out;
    model.sigma_in = f.spectrum_in;
    model.U_hat = std::move(f.u_hat);

    const Eigen::MatrixXd uq = model.U_hat.transpose() * f.q;
    const Eigen::MatrixXd u1u = f.u1.transpose() * model.U_hat;
    model.A_tilde = uq * u1u;
    model.B_reduced = uq * f.u2.transpose();

    Eigen::EigenSolver<Eigen::MatrixXd> eig(model.A_tilde);
    if (eig.info() != Eigen::Success) {
        throw NumericalError("fit: eigendecomposition of the reduced operator failed");
    }
    const Eigen::VectorXcd mu = eig.eigenvalues();
    const Eigen::MatrixXcd w = eig.eigenvectors();
    std::vector<Index> order(static_cast<std::size_t>(r));
    std::iota(order.begin(), order.end(), Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
        const double ma = std::abs(mu(a));
        const double mb = std::abs(mu(b));
        if (ma != mb) {
            return ma > mb;
        }
        return std::arg(mu(a)) < std::arg(mu(b));
    });
    model.eigvals.resize(r);
    model.eigvecs.resize(r, r);
    for (Index i = 0; i < r; ++i) {
        model.eigvals(i) = mu(order[static_cast<std::size_t>(i)]);
        model.eigvecs.col(i) = w.col(order[static_cast<std::size_t>(i)]);
    }
    const Eigen::MatrixXd qu = f.q * u1u;
    model.modes = qu.cast<std::complex<double>>() * model.eigvecs;
    model.initial_snapshot = snapshots.x_column(0);
    return model;
}

Reconstruction reconstruct(const DmdcModel& model, const SnapshotSet& snapshots) {
    const EmbeddingSpec& a = model.spec;
    const EmbeddingSpec& b = snapshots.spec();
    if (a.n != b.n || a.m != b.m || a.tau_a != b.tau_a || (a.m > 0 && a.tau_b != b.tau_b)) {
        throw InputError("reconstruct: snapshot embedding does not match the model");
    }
    const Eigen::MatrixXd x = snapshots.X();
    const Eigen::MatrixXd xp = snapshots.X_prime();
    Eigen::MatrixXd z = model.A_tilde * (model.U_hat.transpose() * x);
    if (b.m > 0) {
        z += model.B_reduced * snapshots.Gamma();
    }
    const Eigen::MatrixXd pred = model.U_hat * z;
    const double denom = xp.norm();
    Reconstruction out{
        TimeSeries(pred.topRows(b.n), snapshots.dt(),
                   static_cast<double>(snapshots.first_column() + 1) * snapshots.dt()),
        denom > 0.0 ? (pred - xp).norm() / denom : (pred - xp).norm()};
    return out;
}

}  // namespace tdmdc
