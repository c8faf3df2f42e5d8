#pragma once

#include <Eigen/Dense>

namespace tdmdc::detail {

using Eigen::Index;

/// Eigenpairs of a symmetric matrix, eigenvalues descending.
struct SymEig {
    Eigen::VectorXd values;
    Eigen::MatrixXd vectors;
};

SymEig full_eigenpairs(const Eigen::MatrixXd& sym);

/// Leading k eigenpairs through Lanczos with full reorthogonalisation, falling back to a
/// dense solve for small matrices or slow convergence. May return fewer than k pairs when
/// the Krylov space is exhausted (the remaining eigenvalues are then zero).
SymEig top_eigenpairs(const Eigen::MatrixXd& sym, Index k);

/// Zero-extended view helper: signal columns outside [0, K) read as zero.
class PaddedSignal {
 public:
    PaddedSignal(const Eigen::MatrixXd& signal, Index pad_left, Index pad_right);

    /// Columns [start, start + count) of the original signal, zero outside.
    auto window(Index start, Index count) const { return padded_.middleCols(start + left_, count); }
    Index channels() const { return padded_.rows(); }

 private:
    Eigen::MatrixXd padded_;
    Index left_;
};

/// Row-space Gram of two delay embeddings over columns c = first .. first+count-1.
/// Block (i, j) = sum_c a_{c+sa-i} b_{c+sb-j}^T for i < la, j < lb.
Eigen::MatrixXd lagged_row_gram(const Eigen::MatrixXd& a, Index sa, Index la,
                                const Eigen::MatrixXd& b, Index sb, Index lb, Index first,
                                Index count);

/// Column-space Gram of two delay embeddings with the same depth l:
/// entry (c, c') = sum_{i<l} a_{c+sa-i} . b_{c'+sb-i}.
Eigen::MatrixXd lagged_column_gram(const Eigen::MatrixXd& a, Index sa,
                                   const Eigen::MatrixXd& b, Index sb, Index l, Index first,
                                   Index count);

/// Embedding times a dense matrix: block i of the result is
/// sum_c a_{c+s-i} m(c - first, :), for i < l.
Eigen::MatrixXd lagged_product(const Eigen::MatrixXd& a, Index s, Index l, Index first,
                               Index count, const Eigen::MatrixXd& m);

}  // namespace tdmdc::detail
