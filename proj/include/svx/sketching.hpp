#pragma once

#include "svx/kernels.hpp"
#include "svx/synthgen.hpp"

#include <cstdint>
#include <string>

namespace svx {

enum class SubspaceSource { Sketched, Exact, Random };

std::string_view to_string(SubspaceSource source);

struct Provenance {
    SubspaceSource source = SubspaceSource::Sketched;
    int power = 0; ///< number of A-products per side; meaningful for Sketched only

    std::string describe() const;
};

/// Orthonormal approximations U-tilde (m x (r+ell)) and V-tilde (n x r) to the
/// leading left and right singular subspaces.
class SubspacePair {
public:
    /// Orthonormality tolerance on max|X^T X - I|.
    static constexpr double kOrthTolerance = 1e-12;

    /// Checks shapes and orthonormality; throws DimensionError or PreconditionError.
    SubspacePair(Matrix u_tilde, Matrix v_tilde, Provenance provenance);

    const Matrix& u_tilde() const { return u_; }
    const Matrix& v_tilde() const { return v_; }
    Eigen::Index r() const { return v_.cols(); }
    Eigen::Index ell() const { return u_.cols() - v_.cols(); }
    Eigen::Index m() const { return u_.rows(); }
    Eigen::Index n() const { return v_.rows(); }
    const Provenance& provenance() const { return provenance_; }

private:
    Matrix u_;
    Matrix v_;
    Provenance provenance_;
};

/// Gaussian sketch with `power` products per side:
///   V-tilde = orth((A^T A)^(power-1) A^T Omega_1),  Omega_1 in R^{m x r}
///   U-tilde = orth((A A^T)^(power-1) A Omega_2),    Omega_2 in R^{n x (r+ell)}
/// re-orthonormalizing after every product. Omega_1 and Omega_2 are drawn
/// independently from streams SketchRight and SketchLeft.
SubspacePair sketch_subspaces(const Matrix& a, Eigen::Index r, Eigen::Index ell, int power,
                              std::uint64_t seed);

/// Leading r+ell left and r right singular vectors of the ground truth.
SubspacePair exact_subspaces(const SyntheticMatrix& truth, Eigen::Index r, Eigen::Index ell);

/// Orthonormalized Gaussian matrices; A is never touched.
SubspacePair random_subspaces(Eigen::Index m, Eigen::Index n, Eigen::Index r, Eigen::Index ell,
                              std::uint64_t seed);

/// The pair (V-tilde, orth(A V-tilde)) under which HMT coincides with
/// generalized Nystrom. ell is 0.
SubspacePair hmt_pair(const Matrix& a, const SubspacePair& s);

} // namespace svx
