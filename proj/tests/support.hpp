#pragma once

// Test helpers. Reference quantities here use Eigen's JacobiSVD and
// SelfAdjointEigenSolver, which are independent of the BDCSVD and Householder
// paths the library itself uses.

#include "svx/kernels.hpp"
#include "svx/rng.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

namespace svx::test {

inline Matrix gaussian(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed)
{
    Rng rng(seed);
    return rng.gaussian_matrix(rows, cols);
}

inline Vector jacobi_singular_values(const Matrix& m)
{
    if (m.size() == 0)
        return Vector();
    return Eigen::JacobiSVD<Matrix>(m).singularValues();
}

// Orthonormal columns from a Jacobi SVD of a Gaussian matrix.
inline Matrix random_orthonormal(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed)
{
    Eigen::JacobiSVD<Matrix> svd(gaussian(rows, cols, seed), Eigen::ComputeThinU);
    return svd.matrixU();
}

// rows x cols matrix with the prescribed singular values (padded with zeros).
inline Matrix with_singular_values(Eigen::Index rows, Eigen::Index cols, const Vector& values,
                                   std::uint64_t seed)
{
    const Eigen::Index k = std::min(rows, cols);
    Vector s = Vector::Zero(k);
    s.head(std::min(k, values.size())) = values.head(std::min(k, values.size()));
    const Matrix u = random_orthonormal(rows, k, seed);
    const Matrix v = random_orthonormal(cols, k, seed + 1);
    return u * s.asDiagonal() * v.transpose();
}

inline std::span<const double> as_span(const Vector& v)
{
    return {v.data(), static_cast<std::size_t>(v.size())};
}

inline double max_abs_diff(const Vector& a, const Vector& b)
{
    return (a - b).cwiseAbs().maxCoeff();
}

// Eigenvalues of the symmetric matrix, descending.
inline Vector sorted_eigenvalues(const Matrix& h)
{
    Vector e = Eigen::SelfAdjointEigenSolver<Matrix>(h, Eigen::EigenvaluesOnly).eigenvalues();
    std::sort(e.data(), e.data() + e.size(), [](double x, double y) { return x > y; });
    return e;
}

} // namespace svx::test
