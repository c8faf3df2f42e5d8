#include "linalg.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace tdmdc::detail {

namespace {

constexpr Index kDenseLimit = 240;
constexpr double kRitzTolerance = 1e-11;

SymEig descending(const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>& solver, Index k) {
    const Index n = solver.eigenvalues().size();
    k = std::min(k, n);
    SymEig out;
    out.values = solver.eigenvalues().reverse().head(k);
    out.vectors = solver.eigenvectors().rowwise().reverse().leftCols(k);
    return out;
}

}  // namespace

SymEig full_eigenpairs(const Eigen::MatrixXd& sym) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym);
    return descending(solver, sym.rows());
}

SymEig top_eigenpairs(const Eigen::MatrixXd& sym, Index k) {
    const Index n = sym.rows();
    if (n <= kDenseLimit || 3 * k >= n) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym);
        return descending(solver, k);
    }
    const double scale = sym.diagonal().cwiseAbs().maxCoeff();
    Index m = std::min(n, std::max<Index>(2 * k + 10, 40));
    while (true) {
        Eigen::MatrixXd q(n, m + 1);
        Eigen::VectorXd alpha(m);
        Eigen::VectorXd beta(m);
        Eigen::VectorXd v(n);
        for (Index i = 0; i < n; ++i) {
            v(i) = 1.0 + 0.5 * std::sin(1.7 * static_cast<double>(i) + 0.3);
        }
        q.col(0) = v.normalized();
        Index steps = m;
        for (Index j = 0; j < m; ++j) {
            Eigen::VectorXd w = sym * q.col(j);
            alpha(j) = q.col(j).dot(w);
            for (int pass = 0; pass < 2; ++pass) {
                w -= q.leftCols(j + 1) * (q.leftCols(j + 1).transpose() * w);
            }
            beta(j) = w.norm();
            if (beta(j) <= 1e-13 * std::max(scale, 1e-300)) {
                steps = j + 1;
                beta(j) = 0.0;
                break;
            }
            q.col(j + 1) = w / beta(j);
        }
        Eigen::MatrixXd t = Eigen::MatrixXd::Zero(steps, steps);
        for (Index j = 0; j < steps; ++j) {
            t(j, j) = alpha(j);
            if (j + 1 < steps) {
                t(j, j + 1) = beta(j);
                t(j + 1, j) = beta(j);
            }
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> small(t);
        const SymEig ritz = descending(small, k);
        const Index found = ritz.values.size();
        const double top = std::max(std::abs(ritz.values(0)), 1e-300);
        bool converged = true;
        for (Index i = 0; i < found && steps == m; ++i) {
            const double residual = std::abs(beta(steps - 1) * ritz.vectors(steps - 1, i));
            if (residual > kRitzTolerance * top) {
                converged = false;
                break;
            }
        }
        if (converged) {
            SymEig out;
            out.values = ritz.values;
            out.vectors = q.leftCols(steps) * ritz.vectors;
            return out;
        }
        if (m == n) {
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym);
            return descending(solver, k);
        }
        m = std::min(n, 2 * m);
    }
}

PaddedSignal::PaddedSignal(const Eigen::MatrixXd& signal, Index pad_left, Index pad_right)
    : padded_(Eigen::MatrixXd::Zero(signal.rows(), signal.cols() + pad_left + pad_right)),
      left_(pad_left) {
    padded_.middleCols(pad_left, signal.cols()) = signal;
}

Eigen::MatrixXd lagged_row_gram(const Eigen::MatrixXd& a, Index sa, Index la,
                                const Eigen::MatrixXd& b, Index sb, Index lb, Index first,
                                Index count) {
    const Index na = a.rows();
    const Index nb = b.rows();
    const Index pad = std::max(la, lb) + 2;
    const PaddedSignal pa(a, pad, 2);
    const PaddedSignal pb(b, pad, 2);
    Eigen::MatrixXd r(na * la, nb * lb);
    if (na == 0 || nb == 0) {
        return r;
    }
    const auto a0 = pa.window(first + sa, count);
    for (Index j = 0; j < lb; ++j) {
        r.block(0, j * nb, na, nb).noalias() = a0 * pb.window(first + sb - j, count).transpose();
    }
    const auto b0 = pb.window(first + sb, count);
    for (Index i = 1; i < la; ++i) {
        r.block(i * na, 0, na, nb).noalias() = pa.window(first + sa - i, count) * b0.transpose();
    }
    // Column i of `enter`/`leave` holds a_{head+sa-i} / a_{tail+sa-i}.
    const Index head = first - 1;
    const Index tail = first + count - 1;
    Eigen::MatrixXd a_enter(na, la);
    Eigen::MatrixXd a_leave(na, la);
    Eigen::MatrixXd b_enter(nb, lb);
    Eigen::MatrixXd b_leave(nb, lb);
    for (Index i = 0; i < la; ++i) {
        a_enter.col(i) = pa.window(head + sa - i, 1);
        a_leave.col(i) = pa.window(tail + sa - i, 1);
    }
    for (Index j = 0; j < lb; ++j) {
        b_enter.col(j) = pb.window(head + sb - j, 1);
        b_leave.col(j) = pb.window(tail + sb - j, 1);
    }
    for (Index j = 0; j + 1 < lb; ++j) {
        for (Index i = 0; i + 1 < la; ++i) {
            for (Index q = 0; q < nb; ++q) {
                const double be = b_enter(q, j);
                const double bl = b_leave(q, j);
                const double* src = &r(i * na, j * nb + q);
                double* dst = &r((i + 1) * na, (j + 1) * nb + q);
                for (Index p = 0; p < na; ++p) {
                    dst[p] = src[p] + a_enter(p, i) * be - a_leave(p, i) * bl;
                }
            }
        }
    }
    return r;
}

Eigen::MatrixXd lagged_column_gram(const Eigen::MatrixXd& a, Index sa,
                                   const Eigen::MatrixXd& b, Index sb, Index l, Index first,
                                   Index count) {
    if (a.rows() == 0 || l == 0) {
        return Eigen::MatrixXd::Zero(count, count);
    }
    const PaddedSignal pa(a, l + 2, 2);
    const PaddedSignal pb(b, l + 2, 2);
    const Index span = count + l - 1;
    Eigen::MatrixXd g = pa.window(first + sa - l + 1, span).transpose() *
                        pb.window(first + sb - l + 1, span);
    for (Index j = 1; j < span; ++j) {
        for (Index i = 1; i < span; ++i) {
            g(i, j) += g(i - 1, j - 1);
        }
    }
    Eigen::MatrixXd out(count, count);
    for (Index cp = 0; cp < count; ++cp) {
        for (Index c = 0; c < count; ++c) {
            double v = g(c + l - 1, cp + l - 1);
            if (c > 0 && cp > 0) {
                v -= g(c - 1, cp - 1);
            }
            out(c, cp) = v;
        }
    }
    return out;
}

Eigen::MatrixXd lagged_product(const Eigen::MatrixXd& a, Index s, Index l, Index first,
                               Index count, const Eigen::MatrixXd& m) {
    const Index na = a.rows();
    const PaddedSignal pa(a, l + 2, 2);
    Eigen::MatrixXd out(na * l, m.cols());
    for (Index i = 0; i < l; ++i) {
        out.middleRows(i * na, na).noalias() = pa.window(first + s - i, count) * m;
    }
    return out;
}

}  // namespace tdmdc::detail
