#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"
#include "svx/kernels.hpp"

#include <Eigen/QR>
#include <omp.h>

#include <cmath>
#include <limits>

using namespace svx;
using svx::test::gaussian;

TEST_CASE("thin_qr reconstructs and has orthonormal Q")
{
    const Matrix m = gaussian(30, 7, 1);
    const kernels::ThinQr qr = kernels::thin_qr(m);
    CHECK(qr.q.rows() == 30);
    CHECK(qr.q.cols() == 7);
    CHECK(qr.r.rows() == 7);
    CHECK((qr.q * qr.r - m).norm() <= 1e-13 * m.norm());
    CHECK(kernels::orthonormality_defect(qr.q) <= 1e-14);
    CHECK(qr.r.triangularView<Eigen::StrictlyLower>().toDenseMatrix().norm() == 0.0);
    CHECK_THROWS_AS(kernels::thin_qr(gaussian(3, 5, 2)), DimensionError);
}

TEST_CASE("full_q is square orthogonal and starts with the thin basis span")
{
    const Matrix m = gaussian(12, 4, 3);
    const Matrix q = kernels::full_q(m);
    CHECK(q.rows() == 12);
    CHECK(q.cols() == 12);
    CHECK(kernels::orthonormality_defect(q) <= 1e-14);
    // trailing columns are orthogonal to range(m)
    CHECK((q.rightCols(8).transpose() * m).norm() <= 1e-13 * m.norm());
}

TEST_CASE("singular values agree with the Jacobi SVD")
{
    for (const auto& [rows, cols] : {std::pair{20, 8}, std::pair{8, 20}, std::pair{15, 15}}) {
        const Matrix m = gaussian(rows, cols, 10 + rows);
        const Vector s = kernels::singular_values(m);
        const Vector ref = test::jacobi_singular_values(m);
        REQUIRE(s.size() == std::min(rows, cols));
        CHECK(test::max_abs_diff(s, ref) <= 1e-13 * ref(0));
        for (Eigen::Index i = 1; i < s.size(); ++i)
            CHECK(s(i) <= s(i - 1));
    }
    CHECK(kernels::singular_values(Matrix(0, 4)).size() == 0);
}

TEST_CASE("Jordan-Wielandt: eigenvalues of [0 M; M^T 0] are +-sigma and zeros")
{
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const Eigen::Index m = 6 + static_cast<Eigen::Index>(seed);
        const Eigen::Index n = 4;
        const Matrix a = gaussian(m, n, 100 + seed);
        Matrix h = Matrix::Zero(m + n, m + n);
        h.topRightCorner(m, n) = a;
        h.bottomLeftCorner(n, m) = a.transpose();
        const Vector eig = test::sorted_eigenvalues(h);
        const Vector s = kernels::singular_values(a);
        Vector expected(m + n);
        expected << s, Vector::Zero(m - n), -s.reverse();
        CHECK(test::max_abs_diff(eig, expected) <= 1e-10 * s(0));
    }
}

TEST_CASE("thin and full SVD reconstruct the matrix")
{
    const Matrix m = gaussian(9, 5, 4);
    const kernels::SvdFactors thin = kernels::thin_svd(m);
    CHECK(thin.u.cols() == 5);
    CHECK((thin.u * thin.sigma.asDiagonal() * thin.v.transpose() - m).norm() <= 1e-13 * m.norm());
    const kernels::SvdFactors full = kernels::full_svd(m);
    CHECK(full.u.cols() == 9);
    CHECK(full.v.cols() == 5);
    CHECK(kernels::orthonormality_defect(full.u) <= 1e-14);
}

TEST_CASE("spectral norm")
{
    Matrix d = Matrix::Zero(4, 3);
    d(0, 0) = 0.5;
    d(1, 1) = -3.0;
    d(2, 2) = 2.0;
    CHECK(kernels::spectral_norm(d) == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(kernels::spectral_norm(Matrix::Zero(3, 3)) == 0.0);
    CHECK(kernels::spectral_norm(Matrix(0, 3)) == 0.0);
    CHECK(kernels::spectral_norm(0.1 * Matrix::Identity(5, 5)) == doctest::Approx(0.1).epsilon(1e-15));
}

TEST_CASE("pinv_solve matches the complete orthogonal decomposition pseudoinverse")
{
    const Matrix core = gaussian(8, 5, 5);
    const Matrix rhs = gaussian(8, 3, 6);
    const Matrix ref = core.completeOrthogonalDecomposition().pseudoInverse() * rhs;
    CHECK((kernels::pinv_solve(core, rhs) - ref).norm() <= 1e-12 * ref.norm());
    const kernels::CoreFactor f = kernels::factor_core(core);
    CHECK((kernels::pinv_solve(f, rhs) - ref).norm() <= 1e-12 * ref.norm());
}

TEST_CASE("factor_core rejects a rank deficient core")
{
    Matrix core = gaussian(6, 4, 7);
    core.col(3) = core.col(0) - 2.0 * core.col(1);
    CHECK_THROWS_AS(kernels::factor_core(core), RankDeficientCore);
    CHECK_THROWS_AS(kernels::pinv_solve(core, gaussian(6, 1, 8)), RankDeficientCore);
}

TEST_CASE("right_divide inverts an upper triangular factor from the right")
{
    const Matrix r = kernels::thin_qr(gaussian(10, 4, 9)).r;
    const Matrix lhs = gaussian(6, 4, 10);
    const Matrix x = kernels::right_divide(lhs, r);
    CHECK((x * r - lhs).norm() <= 1e-12 * lhs.norm());
}

TEST_CASE("non-finite input is rejected")
{
    Matrix m = gaussian(3, 3, 11);
    CHECK_NOTHROW(kernels::require_finite(m, "test"));
    m(1, 2) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(kernels::require_finite(m, "test"), NonFiniteInput);
    m(1, 2) = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(kernels::require_finite(m, "test"), NonFiniteInput);
}

TEST_CASE("OpenMP products are bitwise identical to the serial reference")
{
    const Matrix a = gaussian(203, 131, 12);
    const Matrix x = gaussian(131, 9, 13);
    const Matrix y = gaussian(203, 9, 14);
    const Matrix ax_serial = kernels::multiply_serial(a, x);
    const Matrix aty_serial = kernels::multiply_adjoint_serial(a, y);
    CHECK((ax_serial - a * x).norm() <= 1e-13 * (a * x).norm());
    CHECK((aty_serial - a.transpose() * y).norm() <= 1e-13 * (a.transpose() * y).norm());

    const int saved = omp_get_max_threads();
    for (const int threads : {1, 2, 3, 4, 7}) {
        omp_set_num_threads(threads);
        CAPTURE(threads);
        CHECK(kernels::multiply(a, x) == ax_serial);
        CHECK(kernels::multiply_adjoint(a, y) == aty_serial);
    }
    omp_set_num_threads(saved);
}

TEST_CASE("products check shapes")
{
    const Matrix a = gaussian(5, 4, 15);
    CHECK_THROWS_AS(kernels::multiply(a, gaussian(5, 2, 16)), DimensionError);
    CHECK_THROWS_AS(kernels::multiply_adjoint(a, gaussian(4, 2, 17)), DimensionError);
    CHECK(kernels::multiply(a, Matrix(4, 0)).cols() == 0);
}
