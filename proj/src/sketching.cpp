#include "svx/sketching.hpp"

#include "svx/rng.hpp"

namespace svx {

std::string_view to_string(SubspaceSource source)
{
    switch (source) {
    case SubspaceSource::Sketched: return "sketched";
    case SubspaceSource::Exact: return "exact";
    case SubspaceSource::Random: return "random";
    }
    return "sketched";
}

std::string Provenance::describe() const
{
    std::string out(to_string(source));
    if (source == SubspaceSource::Sketched)
        out += "(q=" + std::to_string(power) + ")";
    return out;
}

SubspacePair::SubspacePair(Matrix u_tilde, Matrix v_tilde, Provenance provenance)
    : u_(std::move(u_tilde)), v_(std::move(v_tilde)), provenance_(provenance)
{
    if (v_.cols() < 1)
        throw DimensionError("SubspacePair: r must be at least 1");
    if (u_.cols() < v_.cols())
        throw DimensionError("SubspacePair: U-tilde needs at least r columns");
    if (u_.rows() < u_.cols() || v_.rows() < v_.cols())
        throw DimensionError("SubspacePair: factors must be tall (m >= r+ell, n >= r)");
    kernels::require_finite(u_, "SubspacePair U-tilde");
    kernels::require_finite(v_, "SubspacePair V-tilde");
    if (kernels::orthonormality_defect(u_) > kOrthTolerance ||
        kernels::orthonormality_defect(v_) > kOrthTolerance)
        throw PreconditionError("SubspacePair: factors must have orthonormal columns");
}

namespace {

void check_sketch_shape(Eigen::Index m, Eigen::Index n, Eigen::Index r, Eigen::Index ell)
{
    if (r < 1 || ell < 0 || n < r || m < r + ell)
        throw DimensionError("subspace shapes: need r >= 1, ell >= 0, n >= r, m >= r + ell (m = " +
                             std::to_string(m) + ", n = " + std::to_string(n) + ", r = " +
                             std::to_string(r) + ", ell = " + std::to_string(ell) + ")");
}

} // namespace

SubspacePair sketch_subspaces(const Matrix& a, Eigen::Index r, Eigen::Index ell, int power,
                              std::uint64_t seed)
{
    if (power < 1)
        throw PreconditionError("sketch_subspaces: power must be at least 1");
    const Eigen::Index m = a.rows();
    const Eigen::Index n = a.cols();
    check_sketch_shape(m, n, r, ell);
    kernels::require_finite(a, "sketch_subspaces");

    Rng right_rng(derive_seed(seed, Stream::SketchRight));
    Rng left_rng(derive_seed(seed, Stream::SketchLeft));
    const Matrix omega1 = right_rng.gaussian_matrix(m, r);
    const Matrix omega2 = left_rng.gaussian_matrix(n, r + ell);

    Matrix v = kernels::orthonormalize(kernels::multiply_adjoint(a, omega1));
    for (int k = 1; k < power; ++k) {
        const Matrix w = kernels::orthonormalize(kernels::multiply(a, v));
        v = kernels::orthonormalize(kernels::multiply_adjoint(a, w));
    }

    Matrix u = kernels::orthonormalize(kernels::multiply(a, omega2));
    for (int k = 1; k < power; ++k) {
        const Matrix w = kernels::orthonormalize(kernels::multiply_adjoint(a, u));
        u = kernels::orthonormalize(kernels::multiply(a, w));
    }

    return SubspacePair(std::move(u), std::move(v), {SubspaceSource::Sketched, power});
}

SubspacePair exact_subspaces(const SyntheticMatrix& truth, Eigen::Index r, Eigen::Index ell)
{
    check_sketch_shape(truth.rows(), truth.cols(), r, ell);
    if (r + ell > truth.u_true.cols())
        throw DimensionError("exact_subspaces: r + ell exceeds the number of singular vectors");
    return SubspacePair(truth.u_true.leftCols(r + ell), truth.v_true.leftCols(r),
                        {SubspaceSource::Exact, 0});
}

SubspacePair random_subspaces(Eigen::Index m, Eigen::Index n, Eigen::Index r, Eigen::Index ell,
                              std::uint64_t seed)
{
    check_sketch_shape(m, n, r, ell);
    Rng left_rng(derive_seed(seed, Stream::RandomLeft));
    Rng right_rng(derive_seed(seed, Stream::RandomRight));
    Matrix u = kernels::orthonormalize(left_rng.gaussian_matrix(m, r + ell));
    Matrix v = kernels::orthonormalize(right_rng.gaussian_matrix(n, r));
    return SubspacePair(std::move(u), std::move(v), {SubspaceSource::Random, 0});
}

SubspacePair hmt_pair(const Matrix& a, const SubspacePair& s)
{
    if (a.rows() != s.m() || a.cols() != s.n())
        throw DimensionError("hmt_pair: matrix and subspaces disagree in shape");
    Matrix q = kernels::orthonormalize(kernels::multiply(a, s.v_tilde()));
    return SubspacePair(std::move(q), s.v_tilde(), s.provenance());
}

} // namespace svx
