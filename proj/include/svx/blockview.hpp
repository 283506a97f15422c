#pragma once

#include "svx/extract.hpp"
#include "svx/kernels.hpp"
#include "svx/sketching.hpp"

namespace svx {

/// The transformed matrix Q1^T A Q2 split as
///
///            r          n - r
///   k     [ a11          a12 ]
///   m - k [ a21          a22 ]
///
/// with Q1 = [U-tilde U-perp], Q2 = [V-tilde V-perp]. For the partition built
/// by block_transform, k = r + ell; square_head_repartition produces k = r.
struct BlockPartition {
    Matrix a11, a12, a21, a22;
    Matrix q1; ///< m x m orthogonal
    Matrix q2; ///< n x n orthogonal

    Eigen::Index head_rows() const { return a11.rows(); }
    Eigen::Index head_cols() const { return a11.cols(); }
    Eigen::Index rows() const { return a11.rows() + a21.rows(); }
    Eigen::Index cols() const { return a11.cols() + a12.cols(); }
    /// Oversampling encoded by the split, head_rows - head_cols.
    Eigen::Index ell() const { return head_rows() - head_cols(); }

    Matrix assemble() const;
};

/// Blocks of a perturbation F conformal with some 2x2 split. Blocks may be
/// empty (zero rows or columns) when a side of the split is empty.
struct PerturbationBlocks {
    Matrix f11, f12, f21, f22;
    double norm_f = 0.0; ///< spectral norm of the assembled F

    Matrix assemble() const;
};

/// Orthonormal basis of the orthogonal complement of range(basis), taken from
/// the trailing columns of the full Householder Q of `basis`.
Matrix orthonormal_complement(const Matrix& basis);

BlockPartition block_transform(const Matrix& a, const SubspacePair& s);

/// Perturbation of the transformed matrix that each method applies, in the
/// sense that method's approximation equals (transformed A) - F:
///   GN  : [0, A12 - A11 A11^+ A12; 0, A22 - A21 A11^+ A12]
///   RR  : [0, A12; A21, A22]
///   SVD : [0, A-tilde_2] where A-tilde = A Q2, with the split placed after
///         all m rows, so F21 and F22 have zero rows.
/// HMT is GN on hmt_pair(); pass that partition with Method::GN.
PerturbationBlocks perturbation_matrix(const BlockPartition& p, Method method);

/// A11^+ A12, the generalized Schur complement pieces used by GN.
struct SchurPieces {
    Matrix projected_a12; ///< A11 A11^+ A12
    Matrix coupled;       ///< A21 A11^+ A12
};
SchurPieces schur_pieces(const BlockPartition& p);

/// Diagonalizes the (1,1) block, A11 = X S Y^T, and re-splits
/// diag(X^T, I) A diag(Y, I) so the new (1,1) block is r x r. Q1 and Q2 absorb
/// X and Y. Throws PreconditionError when ell == 0.
BlockPartition square_head_repartition(const BlockPartition& p);

} // namespace svx
