#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "tdmdc/time_series.hpp"

namespace tdmdc {

/// M y'' + C y' + K y = u with n degrees of freedom.
struct LtiSecondOrderModel {
    Eigen::MatrixXd mass;
    Eigen::MatrixXd damping;
    Eigen::MatrixXd stiffness;

    Index dofs() const { return mass.rows(); }

    /// Throws InputError if the matrices are not square and equally sized, if M is not
    /// symmetric positive definite or if K has a negative eigenvalue below -1e-10*||K||.
    void validate() const;
};

/// Uniform fixed-free chain of `dofs` equal masses and springs with Rayleigh damping
/// C = alpha*M + beta*K.
LtiSecondOrderModel build_chain(Index dofs, double mass, double stiffness, double alpha,
                                double beta);

/// The six-storey benchmark: m = 1 kg, k = 4 N/m, C = 0.02 M + 0.0001 K.
LtiSecondOrderModel build_6dof();

struct ReferenceMode {
    int order = 0;          ///< 1-based, ascending frequency
    double freq_hz = 0.0;
    double damping = 0.0;
    double omega = 0.0;     ///< rad/s, equals 2*pi*freq_hz
    Eigen::VectorXcd shape; ///< unit norm, largest-magnitude entry real positive
};

/// Modes of the 2n x 2n first-order companion form. Throws NumericalError when a mode is
/// critically or over-damped.
std::vector<ReferenceMode> analytic_modes(const LtiSecondOrderModel& model);

/// Continuous companion form [y; y'] with force input per DoF.
struct StateSpace {
    Eigen::MatrixXd a;
    Eigen::MatrixXd b;
};

StateSpace companion_form(const LtiSecondOrderModel& model);

/// Exact zero-order-hold discretisation of the companion form.
StateSpace discretize_zoh(const LtiSecondOrderModel& model, double dt);

/// Displacement response to a piecewise-constant force history. `initial_state` is
/// [y(0); y'(0)] (empty means at rest). Output sample k is the displacement at t0 + k*dt,
/// before the k-th input sample acts.
TimeSeries simulate(const LtiSecondOrderModel& model, const TimeSeries& excitation,
                    const Eigen::VectorXd& initial_state = Eigen::VectorXd());

/// Receptance H(w) = (K - w^2 M + j w C)^-1 at every grid point.
std::vector<Eigen::MatrixXcd> analytic_frf(const LtiSecondOrderModel& model,
                                           std::span<const double> omega_grid);

/// y_k + a_1 y_{k-1} + ... + a_ta y_{k-ta} = b_1 u_{k-1} + ... + b_tb u_{k-tb}
struct ArxModel {
    std::vector<Eigen::MatrixXd> a;  ///< n x n each
    std::vector<Eigen::MatrixXd> b;  ///< n x m each
    double dt = 1.0;
    Index effective_rank = 0;        ///< numerical rank of the regressor
    Index regressor_columns = 0;

    int tau_a() const { return static_cast<int>(a.size()); }
    int tau_b() const { return static_cast<int>(b.size()); }
    Index outputs() const { return a.empty() ? 0 : a.front().rows(); }
    Index inputs() const { return b.empty() ? 0 : b.front().cols(); }
    bool full_rank() const { return effective_rank == regressor_columns; }

    void validate() const;
};

struct ArxFitOptions {
    double rank_cutoff = 1e-10;     ///< relative to the largest singular value
    bool require_full_rank = false; ///< throw NumericalError on a deficient regressor
};

/// Least-squares ARX fit over k = max(ta, tb) .. K-1 through an SVD of the regressor.
ArxModel arx_fit(const TimeSeries& outputs, const TimeSeries& inputs, int tau_a, int tau_b,
                 const ArxFitOptions& options = {});

/// Block companion matrix of size (ta+1)n: top block row [-a_1 ... -a_ta 0], identities
/// on the block sub-diagonal.
Eigen::MatrixXd arx_state_matrix(const ArxModel& model);

/// (ta+1)n x (tb m) input matrix with [b_1 ... b_tb] in the top block row.
Eigen::MatrixXd arx_input_matrix(const ArxModel& model);

/// H(w) = A(q)^-1 B(q) with q = exp(j w dt). Entries are NaN where A(q) is singular.
std::vector<Eigen::MatrixXcd> arx_frf(const ArxModel& model, std::span<const double> omega_grid);

/// Runs the ARX difference equation forward from rest.
TimeSeries arx_simulate(const ArxModel& model, const TimeSeries& inputs);

}  // namespace tdmdc
