#pragma once

#include "svx/kernels.hpp"
#include "svx/sketching.hpp"

#include <cstddef>
#include <string_view>

namespace svx {

enum class Method { RR, SVD, GN, HMT };

std::string_view to_string(Method method);

/// Read-only view of A that counts how it is accessed.
///
/// A pass is one sweep over A; matmuls issued inside the same pass are
/// mutually independent and could share that sweep. Calling multiply()
/// outside an explicit pass opens a pass of its own. The counters model access
/// semantics, not wall-clock concurrency. The referenced matrix must outlive
/// the view, and one instance must not be shared by concurrent extractions.
class CountingMatrix {
public:
    explicit CountingMatrix(const Matrix& a) : a_(&a) {}

    class Pass {
    public:
        Matrix multiply(const Matrix& x);
        Matrix multiply_adjoint(const Matrix& y);

    private:
        friend class CountingMatrix;
        explicit Pass(CountingMatrix& owner) : owner_(&owner) {}
        CountingMatrix* owner_;
    };

    /// Opens a pass; every product issued through it counts as one access.
    Pass open_pass();

    /// a * x in a pass of its own.
    Matrix multiply(const Matrix& x) { return open_pass().multiply(x); }
    /// a^T * y in a pass of its own.
    Matrix multiply_adjoint(const Matrix& y) { return open_pass().multiply_adjoint(y); }

    const Matrix& inner() const { return *a_; }
    Eigen::Index rows() const { return a_->rows(); }
    Eigen::Index cols() const { return a_->cols(); }
    std::size_t matmul_count() const { return matmuls_; }
    std::size_t pass_count() const { return passes_; }

private:
    const Matrix* a_;
    std::size_t matmuls_ = 0;
    std::size_t passes_ = 0;
};

/// Intermediate factors kept for later inspection; unused members stay empty.
struct RetainedFactors {
    Matrix q;       ///< HMT: orthonormal basis of A V-tilde
    Matrix r1;      ///< GN: R of A V-tilde
    Matrix r2;      ///< GN: R of (U-tilde^T A)^T
    Matrix q3, r3;  ///< GN: QR of the core U-tilde^T A V-tilde
    Matrix reduced; ///< the small matrix whose singular values are returned
};

struct ExtractionResult {
    Method method = Method::RR;
    Vector sigma_hat; ///< descending, length r
    std::size_t matmul_count = 0;
    std::size_t pass_count = 0;
    RetainedFactors factors;
};

/// Rayleigh-Ritz: singular values of U-tilde^T A V-tilde.
ExtractionResult extract_rr(CountingMatrix& a, const SubspacePair& s);

/// One-sided projected SVD: singular values of A V-tilde. Uses V-tilde only.
ExtractionResult extract_svd(CountingMatrix& a, const SubspacePair& s);

/// Generalized Nystrom, A V (U^T A V)^+ U^T A, evaluated through its R-factors
/// without forming the m x n approximation. Both products with A are issued in
/// one pass.
ExtractionResult extract_gn(CountingMatrix& a, const SubspacePair& s);

struct GnOptions {
    /// Sketches for generalized Nystrom need not be orthonormal, but the bounds
    /// assume they are; accepting arbitrary sketches must be asked for.
    bool allow_non_orthonormal = false;
};

/// Generalized Nystrom with arbitrary sketches: right_sketch (n x r) and
/// left_sketch (m x (r+ell)).
ExtractionResult extract_gn(CountingMatrix& a, const Matrix& right_sketch,
                            const Matrix& left_sketch, GnOptions options = {});

/// HMT / randomized SVD: singular values of Q^T A where A V-tilde = QR. The
/// second product depends on the first, so this takes two passes.
ExtractionResult extract_hmt(CountingMatrix& a, const SubspacePair& s);

ExtractionResult extract(Method method, CountingMatrix& a, const SubspacePair& s);

/// Pass and matmul counts each method must report.
struct AccessProfile {
    std::size_t passes;
    std::size_t matmuls;
};

constexpr AccessProfile expected_access(Method method)
{
    switch (method) {
    case Method::RR: return {1, 1};
    case Method::SVD: return {1, 1};
    case Method::GN: return {1, 2};
    case Method::HMT: return {2, 2};
    }
    return {0, 0};
}

/// Dense reference for generalized Nystrom: forms A X (Y^T A X)^+ Y^T A
/// explicitly. For testing and for materializing A - A_GN.
Matrix dense_gn_approximation(const Matrix& a, const Matrix& right_sketch,
                              const Matrix& left_sketch);

} // namespace svx
