#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"
#include "svx/sketching.hpp"

#include <cmath>

using namespace svx;

namespace {

// Sine of the largest principal angle between range(x) and range(y), both
// orthonormal with equal column counts: |(I - X X^T) Y|_2.
double max_sin_angle(const Matrix& x, const Matrix& y)
{
    return test::jacobi_singular_values(y - x * (x.transpose() * y))(0);
}

} // namespace

TEST_CASE("sketched subspaces have the requested shapes and are orthonormal")
{
    const SyntheticMatrix t = assemble_synthetic(sv_profile(ProfileKind::Algebraic, 60), 90, 1);
    const SubspacePair s = sketch_subspaces(t.a, 8, 4, 1, 2);
    CHECK(s.r() == 8);
    CHECK(s.ell() == 4);
    CHECK(s.m() == 90);
    CHECK(s.n() == 60);
    CHECK(s.u_tilde().cols() == 12);
    CHECK(kernels::orthonormality_defect(s.u_tilde()) <= 1e-13);
    CHECK(kernels::orthonormality_defect(s.v_tilde()) <= 1e-13);
    CHECK(s.provenance().source == SubspaceSource::Sketched);
    CHECK(s.provenance().power == 1);
}

TEST_CASE("sketching is deterministic per seed")
{
    const SyntheticMatrix t = assemble_synthetic(sv_profile(ProfileKind::Exponential, 40), 50, 3);
    const SubspacePair a = sketch_subspaces(t.a, 5, 2, 2, 11);
    const SubspacePair b = sketch_subspaces(t.a, 5, 2, 2, 11);
    const SubspacePair c = sketch_subspaces(t.a, 5, 2, 2, 12);
    CHECK(a.u_tilde() == b.u_tilde());
    CHECK(a.v_tilde() == b.v_tilde());
    CHECK(a.v_tilde() != c.v_tilde());
}

TEST_CASE("an exactly rank-r matrix is captured by a single sketch")
{
    Vector sv = Vector::Zero(30);
    sv.head(5) << 5.0, 4.0, 3.0, 2.0, 1.0;
    const Matrix a = test::with_singular_values(40, 30, sv, 17);
    const SubspacePair s = sketch_subspaces(a, 5, 0, 1, 4);
    const Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    CHECK(max_sin_angle(s.v_tilde(), svd.matrixV().leftCols(5)) <= 1e-12);
    CHECK(max_sin_angle(s.u_tilde(), svd.matrixU().leftCols(5)) <= 1e-12);
}

TEST_CASE("power iteration tightens the principal angles")
{
    const SyntheticMatrix t = assemble_synthetic(sv_profile(ProfileKind::Algebraic, 80), 100, 5);
    const Matrix v_true = t.v_true.leftCols(10);
    double sin1 = 0.0;
    double sin2 = 0.0;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        sin1 += max_sin_angle(sketch_subspaces(t.a, 10, 0, 1, seed).v_tilde(), v_true);
        sin2 += max_sin_angle(sketch_subspaces(t.a, 10, 0, 2, seed).v_tilde(), v_true);
    }
    CHECK(sin2 < sin1);
}

TEST_CASE("exact subspaces are the leading singular vectors")
{
    const SyntheticMatrix t = assemble_synthetic(sv_profile(ProfileKind::Algebraic, 30), 40, 6);
    const SubspacePair s = exact_subspaces(t, 6, 3);
    CHECK(s.u_tilde() == t.u_true.leftCols(9));
    CHECK(s.v_tilde() == t.v_true.leftCols(6));
    CHECK(s.provenance().source == SubspaceSource::Exact);
    CHECK_THROWS_AS(exact_subspaces(t, 25, 10), DimensionError);
}

TEST_CASE("random subspaces do not depend on A")
{
    const SubspacePair s = random_subspaces(50, 40, 6, 2, 8);
    CHECK(s.u_tilde().cols() == 8);
    CHECK(kernels::orthonormality_defect(s.u_tilde()) <= 1e-13);
    CHECK(random_subspaces(50, 40, 6, 2, 8).v_tilde() == s.v_tilde());
    CHECK(s.provenance().source == SubspaceSource::Random);
}

TEST_CASE("hmt pair spans A V-tilde")
{
    const SyntheticMatrix t = assemble_synthetic(sv_profile(ProfileKind::Algebraic, 30), 40, 7);
    const SubspacePair s = sketch_subspaces(t.a, 5, 3, 1, 1);
    const SubspacePair h = hmt_pair(t.a, s);
    CHECK(h.ell() == 0);
    CHECK(h.v_tilde() == s.v_tilde());
    const Matrix av = t.a * s.v_tilde();
    CHECK((av - h.u_tilde() * (h.u_tilde().transpose() * av)).norm() <= 1e-13 * av.norm());
}

TEST_CASE("subspace pair validation")
{
    const Matrix u = test::random_orthonormal(10, 4, 1);
    const Matrix v = test::random_orthonormal(8, 3, 2);
    CHECK_NOTHROW(SubspacePair(u, v, {}));
    CHECK_THROWS_AS(SubspacePair(u, Matrix(8, 0), {}), DimensionError);
    CHECK_THROWS_AS(SubspacePair(u.leftCols(2), v, {}), DimensionError);
    CHECK_THROWS_AS(SubspacePair(2.0 * u, v, {}), PreconditionError);
    CHECK_THROWS_AS(sketch_subspaces(test::gaussian(10, 8, 3), 3, 0, 0, 1), PreconditionError);
    CHECK_THROWS_AS(sketch_subspaces(test::gaussian(10, 8, 3), 9, 0, 1, 1), DimensionError);
    CHECK_THROWS_AS(sketch_subspaces(test::gaussian(10, 8, 3), 4, 7, 1, 1), DimensionError);
}
