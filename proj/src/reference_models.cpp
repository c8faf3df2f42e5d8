#include "tdmdc/reference_models.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <unsupported/Eigen/MatrixFunctions>

#include "tdmdc/errors.hpp"
#include "tdmdc/shape.hpp"

namespace tdmdc {

namespace {

constexpr std::complex<double> kJ{0.0, 1.0};

bool same_grid(const TimeSeries& a, const TimeSeries& b) {
    return std::abs(a.dt() - b.dt()) <= 1e-12 * a.dt();
}

}  // namespace

void LtiSecondOrderModel::validate() const {
    const Index n = mass.rows();
    if (n < 1) {
        throw InputError("model: at least one degree of freedom required");
    }
    for (const auto* m : {&mass, &damping, &stiffness}) {
        if (m->rows() != n || m->cols() != n) {
            throw InputError("model: M, C and K must be square with equal size");
        }
        if (!m->allFinite()) {
            throw InputError("model: non-finite matrix entry");
        }
    }
    const double m_scale = std::max(mass.norm(), 1e-300);
    if ((mass - mass.transpose()).norm() > 1e-12 * m_scale) {
        throw InputError("model: mass matrix is not symmetric");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> mass_eig(mass, Eigen::EigenvaluesOnly);
    if (!(mass_eig.eigenvalues().minCoeff() > 0.0)) {
        throw InputError("model: mass matrix is not positive definite");
    }
    const double k_scale = stiffness.norm();
    if ((stiffness - stiffness.transpose()).norm() > 1e-12 * std::max(k_scale, 1e-300)) {
        throw InputError("model: stiffness matrix is not symmetric");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> k_eig(stiffness, Eigen::EigenvaluesOnly);
    if (k_eig.eigenvalues().minCoeff() < -1e-10 * k_scale) {
        throw InputError("model: stiffness matrix has a negative eigenvalue");
    }
}

LtiSecondOrderModel build_chain(Index dofs, double mass, double stiffness, double alpha,
                                double beta) {
    if (dofs < 1) {
        throw InputError("chain: at least one degree of freedom required");
    }
    LtiSecondOrderModel model;
    model.mass = Eigen::MatrixXd::Identity(dofs, dofs) * mass;
    model.stiffness = Eigen::MatrixXd::Zero(dofs, dofs);
    for (Index i = 0; i < dofs; ++i) {
        model.stiffness(i, i) = (i + 1 < dofs) ? 2.0 * stiffness : stiffness;
        if (i > 0) {
            model.stiffness(i, i - 1) = -stiffness;
            model.stiffness(i - 1, i) = -stiffness;
        }
    }
    model.damping = alpha * model.mass + beta * model.stiffness;
    return model;
}

LtiSecondOrderModel build_6dof() { return build_chain(6, 1.0, 4.0, 0.02, 0.0001); }

StateSpace companion_form(const LtiSecondOrderModel& model) {
    model.validate();
    const Index n = model.dofs();
    const Eigen::MatrixXd m_inv = model.mass.llt().solve(Eigen::MatrixXd::Identity(n, n));
    StateSpace ss;
    ss.a = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    ss.a.topRightCorner(n, n).setIdentity();
    ss.a.bottomLeftCorner(n, n) = -m_inv * model.stiffness;
    ss.a.bottomRightCorner(n, n) = -m_inv * model.damping;
    ss.b = Eigen::MatrixXd::Zero(2 * n, n);
    ss.b.bottomRows(n) = m_inv;
    return ss;
}

StateSpace discretize_zoh(const LtiSecondOrderModel& model, double dt) {
    if (!(dt > 0.0)) {
        throw InputError("discretize: dt must be positive");
    }
    const StateSpace cont = companion_form(model);
    const Index s = cont.a.rows();
    const Index m = cont.b.cols();
    Eigen::MatrixXd augmented = Eigen::MatrixXd::Zero(s + m, s + m);
    augmented.topLeftCorner(s, s) = cont.a * dt;
    augmented.topRightCorner(s, m) = cont.b * dt;
    const Eigen::MatrixXd expm = augmented.exp();
    return {expm.topLeftCorner(s, s), expm.topRightCorner(s, m)};
}

std::vector<ReferenceMode> analytic_modes(const LtiSecondOrderModel& model) {
    const StateSpace cont = companion_form(model);
    const Index n = model.dofs();
    Eigen::EigenSolver<Eigen::MatrixXd> solver(cont.a);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("analytic_modes: eigendecomposition failed");
    }
    const Eigen::VectorXcd values = solver.eigenvalues();
    const Eigen::MatrixXcd vectors = solver.eigenvectors();

    std::vector<ReferenceMode> modes;
    for (Index i = 0; i < values.size(); ++i) {
        const std::complex<double> s = values(i);
        if (std::abs(s.imag()) <= 1e-12 * std::max(std::abs(s), 1e-300)) {
            throw NumericalError("analytic_modes: non-oscillatory (over-damped) mode");
        }
        if (s.imag() < 0.0) {
            continue;
        }
        ReferenceMode mode;
        mode.omega = std::abs(s);
        mode.freq_hz = mode.omega / (2.0 * std::numbers::pi);
        mode.damping = -s.real() / mode.omega;
        mode.shape = normalize_shape(vectors.col(i).head(n));
        modes.push_back(std::move(mode));
    }
    if (static_cast<Index>(modes.size()) != n) {
        throw NumericalError("analytic_modes: eigenvalues do not pair into conjugates");
    }
    std::sort(modes.begin(), modes.end(),
              [](const ReferenceMode& l, const ReferenceMode& r) { return l.freq_hz < r.freq_hz; });
    for (std::size_t i = 0; i < modes.size(); ++i) {
        modes[i].order = static_cast<int>(i) + 1;
    }
    return modes;
}

TimeSeries simulate(const LtiSecondOrderModel& model, const TimeSeries& excitation,
                    const Eigen::VectorXd& initial_state) {
    const Index n = model.dofs();
    if (excitation.channels() != n) {
        throw InputError("simulate: excitation needs one channel per degree of freedom (" +
                         std::to_string(n) + ")");
    }
    const StateSpace disc = discretize_zoh(model, excitation.dt());
    Eigen::VectorXd state = Eigen::VectorXd::Zero(2 * n);
    if (initial_state.size() != 0) {
        if (initial_state.size() != 2 * n || !initial_state.allFinite()) {
            throw InputError("simulate: initial state must be a finite 2n-vector");
        }
        state = initial_state;
    }
    const Eigen::MatrixXd& u = excitation.data();
    Eigen::MatrixXd y(n, excitation.samples());
    Eigen::VectorXd next(2 * n);
    for (Index k = 0; k < excitation.samples(); ++k) {
        y.col(k) = state.head(n);
        next.noalias() = disc.a * state;
        next.noalias() += disc.b * u.col(k);
        state.swap(next);
    }
    return TimeSeries(std::move(y), excitation.dt(), excitation.t0());
}

std::vector<Eigen::MatrixXcd> analytic_frf(const LtiSecondOrderModel& model,
                                           std::span<const double> omega_grid) {
    model.validate();
    std::vector<Eigen::MatrixXcd> out;
    out.reserve(omega_grid.size());
    const Eigen::MatrixXcd m = model.mass.cast<std::complex<double>>();
    const Eigen::MatrixXcd c = model.damping.cast<std::complex<double>>();
    const Eigen::MatrixXcd k = model.stiffness.cast<std::complex<double>>();
    const Index n = model.dofs();
    for (double w : omega_grid) {
        if (!std::isfinite(w)) {
            throw InputError("analytic_frf: non-finite frequency");
        }
        const Eigen::MatrixXcd dyn = k - (w * w) * m + (kJ * w) * c;
        Eigen::FullPivLU<Eigen::MatrixXcd> lu(dyn);
        lu.setThreshold(1e-13);
        if (!lu.isInvertible()) {
            throw NumericalError("analytic_frf: dynamic stiffness is singular at w = " +
                                 std::to_string(w));
        }
        out.push_back(lu.solve(Eigen::MatrixXcd::Identity(n, n)));
    }
    return out;
}

void ArxModel::validate() const {
    if (a.empty() || b.empty()) {
        throw InputError("arx: delay orders must be at least one");
    }
    const Index n = a.front().rows();
    const Index m = b.front().cols();
    for (const auto& ai : a) {
        if (ai.rows() != n || ai.cols() != n) {
            throw InputError("arx: a_i must all be n x n");
        }
    }
    for (const auto& bi : b) {
        if (bi.rows() != n || bi.cols() != m) {
            throw InputError("arx: b_i must all be n x m");
        }
    }
    if (!(dt > 0.0)) {
        throw InputError("arx: dt must be positive");
    }
}

ArxModel arx_fit(const TimeSeries& outputs, const TimeSeries& inputs, int tau_a, int tau_b,
                 const ArxFitOptions& options) {
    if (tau_a < 1 || tau_b < 1) {
        throw InputError("arx_fit: delay orders must be at least one");
    }
    if (!same_grid(outputs, inputs) || outputs.samples() != inputs.samples()) {
        throw InputError("arx_fit: outputs and inputs must share dt and length");
    }
    const Index n = outputs.channels();
    const Index m = inputs.channels();
    const Index K = outputs.samples();
    const Index lag = std::max(tau_a, tau_b);
    const Index cols = n * tau_a + m * tau_b;
    if (K <= cols + lag) {
        throw InputError("arx_fit: regression is not over-determined (need K > n*ta + m*tb + "
                         "max(ta, tb))");
    }
    const Index rows = K - lag;
    const Eigen::MatrixXd& y = outputs.data();
    const Eigen::MatrixXd& u = inputs.data();

    Eigen::MatrixXd regressor(rows, cols);
    Eigen::MatrixXd target(rows, n);
    for (Index r = 0; r < rows; ++r) {
        const Index k = r + lag;
        for (int i = 1; i <= tau_a; ++i) {
            regressor.row(r).segment((i - 1) * n, n) = -y.col(k - i).transpose();
        }
        for (int i = 1; i <= tau_b; ++i) {
            regressor.row(r).segment(n * tau_a + (i - 1) * m, m) = u.col(k - i).transpose();
        }
        target.row(r) = y.col(k).transpose();
    }

    Eigen::BDCSVD<Eigen::MatrixXd> svd(regressor, Eigen::ComputeThinU | Eigen::ComputeThinV);
    svd.setThreshold(options.rank_cutoff);
    ArxModel model;
    model.dt = outputs.dt();
    model.regressor_columns = cols;
    model.effective_rank = svd.rank();
    if (options.require_full_rank && !model.full_rank()) {
        throw NumericalError("arx_fit: regressor is rank deficient (effective rank " +
                             std::to_string(model.effective_rank) + " of " +
                             std::to_string(cols) + ")");
    }
    Eigen::MatrixXd theta = Eigen::MatrixXd::Zero(cols, n);
    if (model.effective_rank > 0) {
        theta = svd.solve(target);
    }
    for (int i = 0; i < tau_a; ++i) {
        model.a.push_back(theta.middleRows(i * n, n).transpose());
    }
    for (int i = 0; i < tau_b; ++i) {
        model.b.push_back(theta.middleRows(n * tau_a + i * m, m).transpose());
    }
    return model;
}

Eigen::MatrixXd arx_state_matrix(const ArxModel& model) {
    model.validate();
    const Index n = model.outputs();
    const int ta = model.tau_a();
    const Index size = (ta + 1) * n;
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(size, size);
    for (int i = 0; i < ta; ++i) {
        a.block(0, i * n, n, n) = -model.a[i];
        a.block((i + 1) * n, i * n, n, n).setIdentity();
    }
    return a;
}

Eigen::MatrixXd arx_input_matrix(const ArxModel& model) {
    model.validate();
    const Index n = model.outputs();
    const Index m = model.inputs();
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero((model.tau_a() + 1) * n, model.tau_b() * m);
    for (int i = 0; i < model.tau_b(); ++i) {
        b.block(0, i * m, n, m) = model.b[i];
    }
    return b;
}

std::vector<Eigen::MatrixXcd> arx_frf(const ArxModel& model, std::span<const double> omega_grid) {
    model.validate();
    const Index n = model.outputs();
    const Index m = model.inputs();
    std::vector<Eigen::MatrixXcd> out;
    out.reserve(omega_grid.size());
    for (double w : omega_grid) {
        if (!std::isfinite(w) || std::abs(w * model.dt) > std::numbers::pi * (1.0 + 1e-12)) {
            throw InputError("arx_frf: frequency must lie within the Nyquist band");
        }
        Eigen::MatrixXcd a_w = Eigen::MatrixXcd::Identity(n, n);
        Eigen::MatrixXcd b_w = Eigen::MatrixXcd::Zero(n, m);
        for (int i = 1; i <= model.tau_a(); ++i) {
            a_w += model.a[i - 1].cast<std::complex<double>>() * std::exp(-kJ * (w * model.dt * i));
        }
        for (int i = 1; i <= model.tau_b(); ++i) {
            b_w += model.b[i - 1].cast<std::complex<double>>() * std::exp(-kJ * (w * model.dt * i));
        }
        Eigen::JacobiSVD<Eigen::MatrixXcd> check(a_w);
        const auto& sv = check.singularValues();
        if (sv(sv.size() - 1) <= 1e-13 * sv(0)) {
            const double nan = std::numeric_limits<double>::quiet_NaN();
            out.emplace_back(Eigen::MatrixXcd::Constant(n, m, {nan, nan}));
            continue;
        }
        out.push_back(a_w.partialPivLu().solve(b_w));
    }
    return out;
}

TimeSeries arx_simulate(const ArxModel& model, const TimeSeries& inputs) {
    model.validate();
    if (inputs.channels() != model.inputs()) {
        throw InputError("arx_simulate: input channel count mismatch");
    }
    const Index n = model.outputs();
    const Index K = inputs.samples();
    const Eigen::MatrixXd& u = inputs.data();
    Eigen::MatrixXd y = Eigen::MatrixXd::Zero(n, K);
    for (Index k = 0; k < K; ++k) {
        Eigen::VectorXd next = Eigen::VectorXd::Zero(n);
        for (int i = 1; i <= model.tau_a() && k - i >= 0; ++i) {
            next.noalias() -= model.a[i - 1] * y.col(k - i);
        }
        for (int i = 1; i <= model.tau_b() && k - i >= 0; ++i) {
            next.noalias() += model.b[i - 1] * u.col(k - i);
        }
        y.col(k) = next;
    }
    return TimeSeries(std::move(y), inputs.dt(), inputs.t0());
}

}  // namespace tdmdc
