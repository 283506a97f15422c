#include "svx/extract.hpp"

#include <Eigen/QR>

namespace svx {

std::string_view to_string(Method method)
{
    switch (method) {
    case Method::RR: return "RR";
    case Method::SVD: return "SVD";
    case Method::GN: return "GN";
    case Method::HMT: return "HMT";
    }
    return "?";
}

CountingMatrix::Pass CountingMatrix::open_pass()
{
    ++passes_;
    return Pass(*this);
}

Matrix CountingMatrix::Pass::multiply(const Matrix& x)
{
    ++owner_->matmuls_;
    return kernels::multiply(*owner_->a_, x);
}

Matrix CountingMatrix::Pass::multiply_adjoint(const Matrix& y)
{
    ++owner_->matmuls_;
    return kernels::multiply_adjoint(*owner_->a_, y);
}

namespace {

void check_pair_shape(const CountingMatrix& a, const SubspacePair& s, std::string_view who)
{
    if (a.rows() != s.m() || a.cols() != s.n())
        throw DimensionError(std::string(who) + ": A is " + std::to_string(a.rows()) + "x" +
                             std::to_string(a.cols()) + " but subspaces are for " +
                             std::to_string(s.m()) + "x" + std::to_string(s.n()));
}

Vector leading(const Vector& sigma, Eigen::Index r) { return sigma.head(std::min(r, sigma.size())); }

struct Snapshot {
    std::size_t matmuls;
    std::size_t passes;
};

Snapshot snapshot(const CountingMatrix& a) { return {a.matmul_count(), a.pass_count()}; }

void record_counts(ExtractionResult& out, const CountingMatrix& a, Snapshot before)
{
    out.matmul_count = a.matmul_count() - before.matmuls;
    out.pass_count = a.pass_count() - before.passes;
}

} // namespace

ExtractionResult extract_rr(CountingMatrix& a, const SubspacePair& s)
{
    check_pair_shape(a, s, "extract_rr");
    const Snapshot before = snapshot(a);
    ExtractionResult out;
    out.method = Method::RR;

    const Matrix atv = a.multiply(s.v_tilde());
    out.factors.reduced = s.u_tilde().transpose() * atv;
    out.sigma_hat = leading(kernels::singular_values(out.factors.reduced), s.r());
    record_counts(out, a, before);
    return out;
}

ExtractionResult extract_svd(CountingMatrix& a, const SubspacePair& s)
{
    check_pair_shape(a, s, "extract_svd");
    const Snapshot before = snapshot(a);
    ExtractionResult out;
    out.method = Method::SVD;

    out.factors.reduced = a.multiply(s.v_tilde());
    out.sigma_hat = leading(kernels::singular_values(out.factors.reduced), s.r());
    record_counts(out, a, before);
    return out;
}

ExtractionResult extract_gn(CountingMatrix& a, const Matrix& right_sketch,
                            const Matrix& left_sketch, GnOptions options)
{
    const Eigen::Index r = right_sketch.cols();
    const Eigen::Index k = left_sketch.cols();
    if (right_sketch.rows() != a.cols() || left_sketch.rows() != a.rows())
        throw DimensionError("extract_gn: sketch rows do not match A");
    if (r < 1 || k < r || a.rows() < k || a.cols() < r)
        throw DimensionError("extract_gn: need 1 <= r <= r+ell <= m and r <= n");
    if (!options.allow_non_orthonormal &&
        (kernels::orthonormality_defect(right_sketch) > SubspacePair::kOrthTolerance ||
         kernels::orthonormality_defect(left_sketch) > SubspacePair::kOrthTolerance))
        throw PreconditionError(
            "extract_gn: non-orthonormal sketches require GnOptions::allow_non_orthonormal");

    const Snapshot before = snapshot(a);
    ExtractionResult out;
    out.method = Method::GN;

    // Both products read A in the same sweep.
    Matrix atv;
    Matrix atu;
    {
        auto pass = a.open_pass();
        atv = pass.multiply(right_sketch);
        atu = pass.multiply_adjoint(left_sketch); // (U^T A)^T
    }

    RetainedFactors& f = out.factors;
    f.r1 = kernels::thin_qr(atv).r;
    const Matrix core = left_sketch.transpose() * atv;
    kernels::CoreFactor core_qr = kernels::factor_core(core);

    // Order matters: fold Q3^T into R2^T before dividing by R3.
    Matrix p;
    if (atu.rows() >= atu.cols()) {
        f.r2 = kernels::thin_qr(atu).r;
        p = core_qr.q.transpose() * f.r2.transpose();
    } else {
        // U^T A is tall here, so there is no R-factor to shrink it to.
        p = core_qr.q.transpose() * atu.transpose();
    }
    f.reduced = kernels::right_divide(f.r1, core_qr.r) * p;
    f.q3 = std::move(core_qr.q);
    f.r3 = std::move(core_qr.r);

    out.sigma_hat = leading(kernels::singular_values(f.reduced), r);
    record_counts(out, a, before);
    return out;
}

ExtractionResult extract_gn(CountingMatrix& a, const SubspacePair& s)
{
    check_pair_shape(a, s, "extract_gn");
    return extract_gn(a, s.v_tilde(), s.u_tilde());
}

ExtractionResult extract_hmt(CountingMatrix& a, const SubspacePair& s)
{
    check_pair_shape(a, s, "extract_hmt");
    const Snapshot before = snapshot(a);
    ExtractionResult out;
    out.method = Method::HMT;

    const Matrix atv = a.multiply(s.v_tilde());
    out.factors.q = kernels::thin_qr(atv).q;
    // Q^T A, computed as (A^T Q)^T in a second sweep over A.
    out.factors.reduced = a.multiply_adjoint(out.factors.q).transpose();
    out.sigma_hat = leading(kernels::singular_values(out.factors.reduced), s.r());
    record_counts(out, a, before);
    return out;
}

ExtractionResult extract(Method method, CountingMatrix& a, const SubspacePair& s)
{
    switch (method) {
    case Method::RR: return extract_rr(a, s);
    case Method::SVD: return extract_svd(a, s);
    case Method::GN: return extract_gn(a, s);
    case Method::HMT: return extract_hmt(a, s);
    }
    throw PreconditionError("extract: unknown method");
}

Matrix dense_gn_approximation(const Matrix& a, const Matrix& right_sketch,
                              const Matrix& left_sketch)
{
    const Matrix ax = a * right_sketch;
    const Matrix ya = left_sketch.transpose() * a;
    const Matrix core = left_sketch.transpose() * ax;
    const Matrix core_pinv = core.completeOrthogonalDecomposition().pseudoInverse();
    return ax * core_pinv * ya;
}

} // namespace svx
