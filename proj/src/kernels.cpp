#include "svx/kernels.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>

namespace svx::kernels {

void require_finite(const Matrix& m, std::string_view what)
{
    if (!m.allFinite())
        throw NonFiniteInput(std::string(what) + ": matrix has non-finite entries");
}

ThinQr thin_qr(const Matrix& m)
{
    require_finite(m, "thin_qr");
    const Eigen::Index rows = m.rows();
    const Eigen::Index cols = m.cols();
    if (rows < cols)
        throw DimensionError("thin_qr: rows (" + std::to_string(rows) + ") < cols (" +
                             std::to_string(cols) + ")");

    Eigen::HouseholderQR<Matrix> qr(m);
    ThinQr out;
    out.q = qr.householderQ() * Matrix::Identity(rows, cols);
    out.r = qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
    return out;
}

Matrix orthonormalize(const Matrix& m) { return thin_qr(m).q; }

Matrix full_q(const Matrix& m)
{
    require_finite(m, "full_q");
    if (m.cols() == 0)
        return Matrix::Identity(m.rows(), m.rows());
    Eigen::HouseholderQR<Matrix> qr(m);
    return qr.householderQ();
}

Vector singular_values(const Matrix& m)
{
    require_finite(m, "singular_values");
    if (m.size() == 0)
        return Vector(0);
    Eigen::BDCSVD<Matrix> svd(m);
    return svd.singularValues();
}

SvdFactors thin_svd(const Matrix& m)
{
    require_finite(m, "thin_svd");
    Eigen::BDCSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    return {svd.matrixU(), svd.singularValues(), svd.matrixV()};
}

SvdFactors full_svd(const Matrix& m)
{
    require_finite(m, "full_svd");
    Eigen::BDCSVD<Matrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    return {svd.matrixU(), svd.singularValues(), svd.matrixV()};
}

double spectral_norm(const Matrix& m)
{
    const Vector s = singular_values(m);
    return s.size() == 0 ? 0.0 : s(0);
}

CoreFactor factor_core(const Matrix& core)
{
    ThinQr qr = thin_qr(core);
    const Vector d = qr.r.diagonal().cwiseAbs();
    if (d.size() > 0) {
        const double largest = d.maxCoeff();
        const double smallest = d.minCoeff();
        if (!(smallest >= kRankTolerance * largest) || largest == 0.0)
            throw RankDeficientCore("core matrix is rank deficient: min|diag R| = " +
                                    std::to_string(smallest) +
                                    ", max|diag R| = " + std::to_string(largest));
    }
    return {std::move(qr.q), std::move(qr.r)};
}

Matrix pinv_solve(const CoreFactor& core, const Matrix& rhs)
{
    if (rhs.rows() != core.q.rows())
        throw DimensionError("pinv_solve: rhs has " + std::to_string(rhs.rows()) +
                             " rows, core has " + std::to_string(core.q.rows()));
    require_finite(rhs, "pinv_solve");
    const Matrix projected = core.q.transpose() * rhs;
    return core.r.triangularView<Eigen::Upper>().solve(projected);
}

Matrix pinv_solve(const Matrix& core, const Matrix& rhs)
{
    return pinv_solve(factor_core(core), rhs);
}

Matrix right_divide(const Matrix& lhs, const Matrix& upper)
{
    if (upper.rows() != upper.cols() || lhs.cols() != upper.rows())
        throw DimensionError("right_divide: incompatible shapes");
    return upper.triangularView<Eigen::Upper>().solve<Eigen::OnTheRight>(lhs);
}

double orthonormality_defect(const Matrix& m)
{
    if (m.cols() == 0)
        return 0.0;
    const Matrix gram = m.transpose() * m;
    return (gram - Matrix::Identity(m.cols(), m.cols())).cwiseAbs().maxCoeff();
}

} // namespace svx::kernels
