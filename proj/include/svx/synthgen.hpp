#pragma once

#include "svx/kernels.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string_view>
#include <vector>

namespace svx {

enum class ProfileKind { Exponential, Algebraic, Custom };

std::string_view to_string(ProfileKind kind);

/// Prescribed singular values, descending with values[0] > 0.
///
/// Exponential: values[i] = 10^(-30 i / (n-1)), so sigma_1 = 1 and sigma_n = 1e-30
/// whatever n is. Algebraic: values[i] = (i+1)^-4. Both use 0-based i.
struct SvProfile {
    ProfileKind kind = ProfileKind::Custom;
    Vector values;

    Eigen::Index size() const { return values.size(); }

    /// Validates ordering and positivity of the leading value.
    static SvProfile custom(std::vector<double> values);
};

SvProfile sv_profile(ProfileKind kind, Eigen::Index n);

/// A = U diag(sigma) V^T together with its factors.
struct SyntheticMatrix {
    Matrix a;      ///< m x n
    Matrix u_true; ///< m x n, orthonormal columns
    SvProfile sigma_true;
    Matrix v_true; ///< n x n, orthogonal
    std::uint64_t seed = 0;

    Eigen::Index rows() const { return a.rows(); }
    Eigen::Index cols() const { return a.cols(); }
};

/// Haar-distributed orthonormal columns: thin QR of a standard Gaussian
/// matrix with the columns of Q re-signed so that diag(R) > 0.
Matrix haar_orthonormal(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed);

/// U is m x n from stream HaarLeft, V is n x n from stream HaarRight.
SyntheticMatrix assemble_synthetic(const SvProfile& profile, Eigen::Index m, std::uint64_t seed);

/// MatrixMarket array format:
///   %%MatrixMarket matrix array real general
///   <rows> <cols>
///   one entry per line, column-major, shortest round-trip decimal.
void write_matrix_market(std::ostream& out, const Matrix& m);
void write_matrix_market(const std::filesystem::path& path, const Matrix& m);
Matrix read_matrix_market(std::istream& in);

} // namespace svx
