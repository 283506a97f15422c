#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <string_view>

namespace svx {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Incompatible shapes or a violated size precondition.
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A NaN or Inf reached an operation that only admits finite entries.
class NonFiniteInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// The core matrix of a pseudoinverse solve lost full column rank.
class RankDeficientCore : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An operation was called outside its documented domain (e.g. ell == 0 where
/// oversampling is required).
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

namespace kernels {

struct ThinQr {
    Matrix q; ///< m x k, orthonormal columns
    Matrix r; ///< k x k, upper triangular
};

struct SvdFactors {
    Matrix u;
    Vector sigma; ///< descending, nonnegative
    Matrix v;
};

/// QR of the square core used by pinv_solve, kept so callers can reuse it.
struct CoreFactor {
    Matrix q;
    Matrix r;
};

/// Relative threshold on diag(R) below which a core counts as rank deficient.
inline constexpr double kRankTolerance = 1e-12;

void require_finite(const Matrix& m, std::string_view what);

/// Householder thin QR. Requires rows >= cols.
ThinQr thin_qr(const Matrix& m);

/// Orthonormal basis of range(m), i.e. thin_qr(m).q.
Matrix orthonormalize(const Matrix& m);

/// Full m x m orthogonal factor of a Householder QR of m.
Matrix full_q(const Matrix& m);

/// Singular values in descending order, length min(rows, cols). Empty input
/// gives an empty vector.
Vector singular_values(const Matrix& m);

/// Thin SVD with u: rows x k, v: cols x k, k = min(rows, cols).
SvdFactors thin_svd(const Matrix& m);

/// Full SVD, u square rows x rows and v square cols x cols.
SvdFactors full_svd(const Matrix& m);

/// Largest singular value; 0 for the zero or empty matrix.
double spectral_norm(const Matrix& m);

/// QR of a full-column-rank core; throws RankDeficientCore when
/// min|diag R| < kRankTolerance * max|diag R|.
CoreFactor factor_core(const Matrix& core);

/// core^+ * rhs evaluated as R^{-1} Q^T rhs from core = QR.
Matrix pinv_solve(const Matrix& core, const Matrix& rhs);
Matrix pinv_solve(const CoreFactor& core, const Matrix& rhs);

/// lhs * upper^{-1} for an invertible upper-triangular matrix (MATLAB's lhs/upper).
Matrix right_divide(const Matrix& lhs, const Matrix& upper);

/// max_ij |M^T M - I|_ij
double orthonormality_defect(const Matrix& m);

} // namespace kernels

/// Products with a dense operand whose accumulation order does not depend on
/// the number of threads. The serial variants are the reference the OpenMP
/// kernels are tested against; both produce bitwise-identical output.
namespace kernels {

/// a * x
Matrix multiply(const Matrix& a, const Matrix& x);
/// a^T * y
Matrix multiply_adjoint(const Matrix& a, const Matrix& y);

Matrix multiply_serial(const Matrix& a, const Matrix& x);
Matrix multiply_adjoint_serial(const Matrix& a, const Matrix& y);

} // namespace kernels

} // namespace svx
