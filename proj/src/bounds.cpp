#include "svx/bounds.hpp"

#include <algorithm>
#include <cmath>

namespace svx {

std::string_view to_string(BoundKind kind)
{
    switch (kind) {
    case BoundKind::Weyl: return "weyl";
    case BoundKind::Block2x2: return "block2x2";
    case BoundKind::RightPerturbation: return "right_perturbation";
    case BoundKind::Tridiagonal: return "tridiagonal";
    case BoundKind::Forward: return "forward";
    case BoundKind::Improved: return "improved";
    case BoundKind::Backward: return "backward";
    case BoundKind::BackwardApprox: return "backward_approx";
    }
    return "?";
}

double weyl(const Matrix& e) { return kernels::spectral_norm(e); }

double weyl(const PerturbationBlocks& f) { return f.norm_f; }

Vector gap_spectrum(const Matrix& block)
{
    if (block.size() == 0)
        return Vector::Zero(1);
    const Vector s = kernels::singular_values(block);
    if (block.rows() == block.cols())
        return s;
    Vector out(s.size() + 1);
    out << s, 0.0;
    return out;
}

double min_gap(double s, const Vector& spectrum)
{
    double best = kInfinity;
    for (Eigen::Index k = 0; k < spectrum.size(); ++k)
        best = std::min(best, std::abs(s - spectrum(k)));
    return best;
}

namespace {

// tau = numerator / (gap - subtract); applicable iff the denominator is positive.
IndexBound tau_entry(double numerator, double gap, double subtract)
{
    IndexBound e;
    e.gap = gap;
    const double denominator = gap - subtract;
    if (denominator > 0.0) {
        e.applicable = true;
        e.tau = numerator / denominator;
    } else {
        e.applicable = false;
        e.tau = denominator == 0.0 ? kInfinity : numerator / denominator;
    }
    return e;
}

void fill_composite(BoundReport& b)
{
    for (auto& e : b.entries) {
        if (!e.applicable)
            e.bound = kInfinity;
        e.composite = e.applicable ? std::min(e.bound, b.weyl) : b.weyl;
    }
}

void require_sigma(std::span<const double> sigma, std::size_t needed, std::string_view who)
{
    if (sigma.size() < needed)
        throw DimensionError(std::string(who) + ": need " + std::to_string(needed) +
                             " singular values, got " + std::to_string(sigma.size()));
}

} // namespace

Matrix Block2x2::assemble() const
{
    check_conformal();
    Matrix out(g1.rows() + c.rows(), g1.cols() + b.cols());
    out.topLeftCorner(g1.rows(), g1.cols()) = g1;
    out.topRightCorner(b.rows(), b.cols()) = b;
    out.bottomLeftCorner(c.rows(), c.cols()) = c;
    out.bottomRightCorner(g2.rows(), g2.cols()) = g2;
    return out;
}

void Block2x2::check_conformal() const
{
    if (g1.rows() != b.rows() || c.rows() != g2.rows() || g1.cols() != c.cols() ||
        b.cols() != g2.cols())
        throw DimensionError("Block2x2: blocks are not conformal");
}

namespace {

void check_perturbation_conformal(const Block2x2& h, const PerturbationBlocks& f)
{
    h.check_conformal();
    auto same = [](const Matrix& x, const Matrix& y) {
        return x.rows() == y.rows() && x.cols() == y.cols();
    };
    if (!same(h.g1, f.f11) || !same(h.b, f.f12) || !same(h.c, f.f21) || !same(h.g2, f.f22))
        throw DimensionError("block2x2_bound: perturbation is not conformal with H");
}

} // namespace

BoundReport block2x2_bound(const Block2x2& h, const PerturbationBlocks& f,
                           std::span<const double> sigma)
{
    check_perturbation_conformal(h, f);
    const double coupling = std::max(kernels::spectral_norm(h.b), kernels::spectral_norm(h.c));
    const double n11 = kernels::spectral_norm(f.f11);
    const double off = std::max(kernels::spectral_norm(f.f12), kernels::spectral_norm(f.f21));
    const double n22 = kernels::spectral_norm(f.f22);
    const Vector g2_spectrum = gap_spectrum(h.g2);

    BoundReport out;
    out.kind = BoundKind::Block2x2;
    out.weyl = f.norm_f;
    out.entries.reserve(sigma.size());
    for (const double s : sigma) {
        IndexBound e = tau_entry(coupling + off, min_gap(s, g2_spectrum), 2.0 * f.norm_f);
        if (e.applicable)
            e.bound = n11 + 2.0 * off * e.tau + n22 * e.tau * e.tau;
        out.entries.push_back(e);
    }
    fill_composite(out);
    return out;
}

BoundReport right_perturbation_bound(const Block2x2& h, const Matrix& f1, const Matrix& f2,
                                     std::span<const double> sigma)
{
    h.check_conformal();
    if (f1.rows() != h.b.rows() || f1.cols() != h.b.cols() || f2.rows() != h.g2.rows() ||
        f2.cols() != h.g2.cols())
        throw DimensionError("right_perturbation_bound: F1/F2 not conformal with H");

    Matrix full = Matrix::Zero(h.g1.rows() + h.c.rows(), h.g1.cols() + h.b.cols());
    full.topRightCorner(f1.rows(), f1.cols()) = f1;
    full.bottomRightCorner(f2.rows(), f2.cols()) = f2;
    const double norm_f = kernels::spectral_norm(full);

    const double coupling = std::max(kernels::spectral_norm(h.b), kernels::spectral_norm(h.c));
    const double n1 = kernels::spectral_norm(f1);
    const double n2 = kernels::spectral_norm(f2);
    const Vector g2_spectrum = gap_spectrum(h.g2);

    BoundReport out;
    out.kind = BoundKind::RightPerturbation;
    out.weyl = norm_f;
    out.entries.reserve(sigma.size());
    for (const double s : sigma) {
        IndexBound e = tau_entry(coupling + n1, min_gap(s, g2_spectrum), 2.0 * norm_f);
        if (e.applicable)
            e.bound = 2.0 * n1 * e.tau + n2 * e.tau * e.tau;
        out.entries.push_back(e);
    }
    fill_composite(out);
    return out;
}

std::vector<Eigen::Index> BlockTridiagonal::row_offsets() const
{
    std::vector<Eigen::Index> off(g.size() + 1, 0);
    for (std::size_t q = 0; q < g.size(); ++q)
        off[q + 1] = off[q] + g[q].rows();
    return off;
}

std::vector<Eigen::Index> BlockTridiagonal::col_offsets() const
{
    std::vector<Eigen::Index> off(g.size() + 1, 0);
    for (std::size_t q = 0; q < g.size(); ++q)
        off[q + 1] = off[q] + g[q].cols();
    return off;
}

void BlockTridiagonal::check_conformal() const
{
    const std::size_t n = g.size();
    if (n == 0)
        throw DimensionError("BlockTridiagonal: no blocks");
    if (b.size() + 1 != n || c.size() + 1 != n)
        throw DimensionError("BlockTridiagonal: need N-1 super- and sub-diagonal blocks");
    for (std::size_t q = 0; q + 1 < n; ++q) {
        if (b[q].rows() != g[q].rows() || b[q].cols() != g[q + 1].cols())
            throw DimensionError("BlockTridiagonal: super-diagonal block " + std::to_string(q + 1) +
                                 " is not conformal");
        if (c[q].rows() != g[q + 1].rows() || c[q].cols() != g[q].cols())
            throw DimensionError("BlockTridiagonal: sub-diagonal block " + std::to_string(q + 1) +
                                 " is not conformal");
    }
}

Matrix BlockTridiagonal::assemble() const
{
    check_conformal();
    const auto ro = row_offsets();
    const auto co = col_offsets();
    Matrix out = Matrix::Zero(ro.back(), co.back());
    for (std::size_t q = 0; q < g.size(); ++q) {
        out.block(ro[q], co[q], g[q].rows(), g[q].cols()) = g[q];
        if (q + 1 < g.size()) {
            out.block(ro[q], co[q + 1], b[q].rows(), b[q].cols()) = b[q];
            out.block(ro[q + 1], co[q], c[q].rows(), c[q].cols()) = c[q];
        }
    }
    return out;
}

Matrix TridiagPerturbation::assemble(const BlockTridiagonal& t) const
{
    t.check_conformal();
    const std::size_t n = t.blocks();
    if (s < 1 || s > n)
        throw DimensionError("TridiagPerturbation: block index out of range");
    const std::size_t q = s - 1;
    if (delta_g.rows() != t.g[q].rows() || delta_g.cols() != t.g[q].cols())
        throw DimensionError("TridiagPerturbation: delta_g not conformal");
    const bool last = s == n;
    if (last) {
        if (delta_b.size() != 0 || delta_c.size() != 0)
            throw DimensionError("TridiagPerturbation: last block has no off-diagonal neighbours");
    } else {
        if (delta_b.rows() != t.b[q].rows() || delta_b.cols() != t.b[q].cols() ||
            delta_c.rows() != t.c[q].rows() || delta_c.cols() != t.c[q].cols())
            throw DimensionError("TridiagPerturbation: delta_b/delta_c not conformal");
    }
    const auto ro = t.row_offsets();
    const auto co = t.col_offsets();
    Matrix out = Matrix::Zero(ro.back(), co.back());
    out.block(ro[q], co[q], delta_g.rows(), delta_g.cols()) = delta_g;
    if (!last) {
        out.block(ro[q], co[q + 1], delta_b.rows(), delta_b.cols()) = delta_b;
        out.block(ro[q + 1], co[q], delta_c.rows(), delta_c.cols()) = delta_c;
    }
    return out;
}

TridiagBoundReport tridiagonal_bound(const BlockTridiagonal& t, const TridiagPerturbation& p,
                                     std::span<const double> sigma)
{
    const std::size_t n = t.blocks();
    const Matrix f = p.assemble(t); // validates shapes
    const double norm_f = kernels::spectral_norm(f);
    const std::size_t s = p.s;

    TridiagBoundReport out;
    out.report.kind = BoundKind::Tridiagonal;
    out.report.weyl = norm_f;

    // 1-based block quantities; Gamma_0 = Gamma_N = 0.
    out.gammas.assign(n + 1, 0.0);
    for (std::size_t q = 1; q < n; ++q)
        out.gammas[q] = std::max(kernels::spectral_norm(t.b[q - 1]), kernels::spectral_norm(t.c[q - 1]));
    out.delta_gamma = s < n ? std::max(kernels::spectral_norm(p.delta_b), kernels::spectral_norm(p.delta_c))
                            : 0.0;
    out.norm_delta_g = kernels::spectral_norm(p.delta_g);

    std::vector<Vector> spectra(n + 1);
    std::vector<double> sigma_max(n + 1, 0.0);
    out.etas.assign(n + 1, 0.0);
    for (std::size_t q = 1; q <= n; ++q) {
        spectra[q] = gap_spectrum(t.g[q - 1]);
        sigma_max[q] = spectra[q].maxCoeff();
        out.etas[q] = out.gammas[q] + out.gammas[q - 1] + norm_f;
    }
    const auto& gam = out.gammas;
    const double dgam = out.delta_gamma;
    const double ndg = out.norm_delta_g;

    for (const double sv : sigma) {
        IndexBound e;
        TridiagIndexDetail detail;
        e.gap = min_gap(sv, spectra[s]);
        auto separated = [&](std::size_t q) { return sv > sigma_max[q] + out.etas[q]; };

        bool ok = s + 1 <= n; // need a block beyond s
        for (std::size_t q = 1; ok && q <= s; ++q)
            ok = separated(q);
        double delta0 = 0.0;
        if (ok) {
            const double den = e.gap - norm_f - ndg - gam[s - 1];
            ok = den > 0.0;
            if (ok) {
                delta0 = (gam[s] + dgam) / den;
                ok = delta0 < 1.0;
            }
        }
        if (ok) {
            detail.deltas.push_back(delta0);
            std::size_t horizon = 0;
            while (s + horizon + 1 <= n - 1) {
                const std::size_t q = s + horizon + 1; // block carrying delta_{horizon+1}
                if (!separated(q))
                    break;
                const double gap_q = min_gap(sv, spectra[q]);
                const double den = horizon == 0 ? gap_q - norm_f - gam[s] - dgam
                                                : gap_q - norm_f - gam[q - 1];
                if (!(den > 0.0))
                    break;
                const double delta = gam[q] / den;
                if (!(delta < 1.0))
                    break;
                detail.deltas.push_back(delta);
                ++horizon;
            }
            detail.horizon = static_cast<int>(horizon);

            double tail = 1.0; // prod_{q=1}^t delta_q
            for (std::size_t q = 1; q < detail.deltas.size(); ++q)
                tail *= detail.deltas[q];
            const double full = delta0 * tail;
            e.applicable = true;
            e.tau = full;
            e.bound = ndg * full * full + 2.0 * dgam * delta0 * tail * tail;
        }
        out.report.entries.push_back(e);
        out.details.push_back(std::move(detail));
    }
    fill_composite(out.report);
    return out;
}

namespace {

struct PartitionNorms {
    double a12 = 0.0;
    double a21 = 0.0;
};

PartitionNorms off_diagonal_norms(const BlockPartition& p)
{
    return {kernels::spectral_norm(p.a12), kernels::spectral_norm(p.a21)};
}

BoundReport forward_gn(const BlockPartition& p, std::span<const double> sigma)
{
    const Eigen::Index r = p.head_cols();
    require_sigma(sigma, static_cast<std::size_t>(r), "forward_bound");
    const PerturbationBlocks e = perturbation_matrix(p, Method::GN);
    const PartitionNorms off = off_diagonal_norms(p);
    const double residual = kernels::spectral_norm(e.f12); // |A12 - A11 A11^+ A12|
    const double schur = kernels::spectral_norm(e.f22);
    const Vector g2 = gap_spectrum(p.a22);

    BoundReport out;
    out.kind = BoundKind::Forward;
    out.method = Method::GN;
    out.weyl = e.norm_f;
    for (Eigen::Index i = 0; i < r; ++i) {
        IndexBound b = tau_entry(std::max(off.a12, off.a21) + residual,
                                 min_gap(sigma[static_cast<std::size_t>(i)], g2), 2.0 * e.norm_f);
        if (b.applicable)
            b.bound = 2.0 * residual * b.tau + schur * b.tau * b.tau;
        out.entries.push_back(b);
    }
    fill_composite(out);
    return out;
}

BoundReport forward_rr(const BlockPartition& p, std::span<const double> sigma)
{
    const Eigen::Index r = p.head_cols();
    require_sigma(sigma, static_cast<std::size_t>(r), "forward_bound");
    const PerturbationBlocks e = perturbation_matrix(p, Method::RR);
    const PartitionNorms off = off_diagonal_norms(p);
    const double coupling = std::max(off.a12, off.a21);
    const double n22 = kernels::spectral_norm(p.a22);
    const Vector g2 = gap_spectrum(p.a22);

    BoundReport out;
    out.kind = BoundKind::Forward;
    out.method = Method::RR;
    out.weyl = e.norm_f;
    for (Eigen::Index i = 0; i < r; ++i) {
        IndexBound b = tau_entry(2.0 * coupling, min_gap(sigma[static_cast<std::size_t>(i)], g2),
                                 2.0 * e.norm_f);
        if (b.applicable) {
            const double den = b.gap - 2.0 * e.norm_f;
            const double sq = 4.0 * coupling * coupling;
            b.bound = sq / den + n22 * sq / (den * den);
        }
        out.entries.push_back(b);
    }
    fill_composite(out);
    return out;
}

BoundReport forward_svd(const BlockPartition& p, std::span<const double> sigma)
{
    const Eigen::Index r = p.head_cols();
    require_sigma(sigma, static_cast<std::size_t>(r), "forward_bound");
    const PerturbationBlocks e = perturbation_matrix(p, Method::SVD);
    const double right = kernels::spectral_norm(e.f12); // |A-tilde_2|

    BoundReport out;
    out.kind = BoundKind::Forward;
    out.method = Method::SVD;
    out.weyl = e.norm_f;
    for (Eigen::Index i = 0; i < r; ++i) {
        const double s = sigma[static_cast<std::size_t>(i)];
        IndexBound b = tau_entry(2.0 * right, s, 2.0 * e.norm_f);
        if (b.applicable)
            b.bound = 4.0 * right * right / (s - 2.0 * e.norm_f);
        out.entries.push_back(b);
    }
    fill_composite(out);
    return out;
}

} // namespace

BoundReport forward_bound(const BlockPartition& p, Method method, std::span<const double> sigma)
{
    switch (method) {
    case Method::GN: return forward_gn(p, sigma);
    case Method::HMT: {
        BoundReport out = forward_gn(p, sigma);
        out.method = Method::HMT;
        return out;
    }
    case Method::RR: return forward_rr(p, sigma);
    case Method::SVD: return forward_svd(p, sigma);
    }
    throw PreconditionError("forward_bound: unknown method");
}

BoundReport improved_oversampling_bound(const BlockPartition& p, std::span<const double> sigma)
{
    if (p.ell() <= 0)
        throw PreconditionError("improved_oversampling_bound: requires oversampling (ell > 0)");
    const BlockPartition square = square_head_repartition(p);
    BoundReport out = forward_gn(square, sigma);
    out.kind = BoundKind::Improved;
    out.weyl = perturbation_matrix(p, Method::GN).norm_f;
    fill_composite(out);
    return out;
}

BoundReport backward_bound(const BlockPartition& p, std::span<const double> sigma_gn,
                           bool approximate_gap)
{
    if (p.ell() != 0)
        throw PreconditionError("backward_bound: only defined without oversampling (ell == 0)");
    const Eigen::Index r = p.head_cols();
    require_sigma(sigma_gn, static_cast<std::size_t>(r), "backward_bound");

    const SchurPieces pieces = schur_pieces(p);
    const PerturbationBlocks e = perturbation_matrix(p, Method::GN);
    const PartitionNorms off = off_diagonal_norms(p);
    const double coupling = std::max(off.a12, off.a21);
    const double schur = kernels::spectral_norm(e.f22);
    const Vector g2 = gap_spectrum(pieces.coupled);
    const double coupled_norm = g2.maxCoeff();

    BoundReport out;
    out.kind = approximate_gap ? BoundKind::BackwardApprox : BoundKind::Backward;
    out.method = Method::GN;
    out.weyl = e.norm_f;
    for (Eigen::Index i = 0; i < r; ++i) {
        const double s = sigma_gn[static_cast<std::size_t>(i)];
        const double gap = approximate_gap ? s - coupled_norm : min_gap(s, g2);
        IndexBound b = tau_entry(coupling, gap, 2.0 * e.norm_f);
        if (b.applicable)
            b.bound = schur * b.tau * b.tau;
        out.entries.push_back(b);
    }
    fill_composite(out);
    return out;
}

BoundReport composite_min_with_weyl(BoundReport b)
{
    fill_composite(b);
    return b;
}

} // namespace svx
