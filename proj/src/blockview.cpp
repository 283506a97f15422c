#include "svx/blockview.hpp"

namespace svx {

namespace {

Matrix assemble_2x2(const Matrix& b11, const Matrix& b12, const Matrix& b21, const Matrix& b22)
{
    const Eigen::Index rows = b11.rows() + b21.rows();
    const Eigen::Index cols = b11.cols() + b12.cols();
    Matrix out(rows, cols);
    out.topLeftCorner(b11.rows(), b11.cols()) = b11;
    out.topRightCorner(b12.rows(), b12.cols()) = b12;
    out.bottomLeftCorner(b21.rows(), b21.cols()) = b21;
    out.bottomRightCorner(b22.rows(), b22.cols()) = b22;
    return out;
}

Matrix vstack(const Matrix& top, const Matrix& bottom)
{
    Matrix out(top.rows() + bottom.rows(), top.cols());
    out.topRows(top.rows()) = top;
    out.bottomRows(bottom.rows()) = bottom;
    return out;
}

} // namespace

Matrix BlockPartition::assemble() const { return assemble_2x2(a11, a12, a21, a22); }

Matrix PerturbationBlocks::assemble() const { return assemble_2x2(f11, f12, f21, f22); }

Matrix orthonormal_complement(const Matrix& basis)
{
    const Matrix q = kernels::full_q(basis);
    return q.rightCols(basis.rows() - basis.cols());
}

BlockPartition block_transform(const Matrix& a, const SubspacePair& s)
{
    if (a.rows() != s.m() || a.cols() != s.n())
        throw DimensionError("block_transform: matrix and subspaces disagree in shape");
    kernels::require_finite(a, "block_transform");

    const Eigen::Index m = a.rows();
    const Eigen::Index n = a.cols();
    const Eigen::Index k = s.r() + s.ell();
    const Eigen::Index r = s.r();

    BlockPartition p;
    p.q1.resize(m, m);
    p.q1.leftCols(k) = s.u_tilde();
    p.q1.rightCols(m - k) = orthonormal_complement(s.u_tilde());
    p.q2.resize(n, n);
    p.q2.leftCols(r) = s.v_tilde();
    p.q2.rightCols(n - r) = orthonormal_complement(s.v_tilde());

    const Matrix abar = p.q1.transpose() * a * p.q2;
    p.a11 = abar.topLeftCorner(k, r);
    p.a12 = abar.topRightCorner(k, n - r);
    p.a21 = abar.bottomLeftCorner(m - k, r);
    p.a22 = abar.bottomRightCorner(m - k, n - r);
    return p;
}

SchurPieces schur_pieces(const BlockPartition& p)
{
    const kernels::CoreFactor core = kernels::factor_core(p.a11);
    const Matrix solved = kernels::pinv_solve(core, p.a12); // A11^+ A12
    return {p.a11 * solved, p.a21 * solved};
}

PerturbationBlocks perturbation_matrix(const BlockPartition& p, Method method)
{
    PerturbationBlocks f;
    switch (method) {
    case Method::GN:
    case Method::HMT: {
        const SchurPieces pieces = schur_pieces(p);
        f.f11 = Matrix::Zero(p.a11.rows(), p.a11.cols());
        f.f12 = p.a12 - pieces.projected_a12;
        f.f21 = Matrix::Zero(p.a21.rows(), p.a21.cols());
        f.f22 = p.a22 - pieces.coupled;
        break;
    }
    case Method::RR:
        f.f11 = Matrix::Zero(p.a11.rows(), p.a11.cols());
        f.f12 = p.a12;
        f.f21 = p.a21;
        f.f22 = p.a22;
        break;
    case Method::SVD: {
        const Eigen::Index m = p.rows();
        const Eigen::Index r = p.head_cols();
        f.f11 = Matrix::Zero(m, r);
        f.f12 = p.q1 * vstack(p.a12, p.a22); // right block of A Q2
        f.f21 = Matrix::Zero(0, r);
        f.f22 = Matrix::Zero(0, p.a12.cols());
        break;
    }
    }
    f.norm_f = kernels::spectral_norm(f.assemble());
    return f;
}

BlockPartition square_head_repartition(const BlockPartition& p)
{
    const Eigen::Index k = p.head_rows();
    const Eigen::Index r = p.head_cols();
    if (k <= r)
        throw PreconditionError("square_head_repartition: requires oversampling (ell > 0)");

    const kernels::SvdFactors svd = kernels::full_svd(p.a11);
    const Matrix& x = svd.u; // k x k
    const Matrix& y = svd.v; // r x r

    const Matrix head = x.transpose() * p.a11 * y; // [S; 0]
    const Matrix right = x.transpose() * p.a12;
    const Matrix low_left = p.a21 * y;

    BlockPartition out;
    out.a11 = head.topRows(r);
    out.a12 = right.topRows(r);
    out.a21 = vstack(head.bottomRows(k - r), low_left);
    out.a22 = vstack(right.bottomRows(k - r), p.a22);

    out.q1 = p.q1;
    out.q1.leftCols(k) = p.q1.leftCols(k) * x;
    out.q2 = p.q2;
    out.q2.leftCols(r) = p.q2.leftCols(r) * y;
    return out;
}

} // namespace svx
