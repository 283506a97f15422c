#pragma once

#include "svx/blockview.hpp"
#include "svx/extract.hpp"
#include "svx/kernels.hpp"

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace svx {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class BoundKind { Weyl, Block2x2, RightPerturbation, Tridiagonal, Forward, Improved, Backward, BackwardApprox };

std::string_view to_string(BoundKind kind);

/// Bound data for one index i (1-based in the math, 0-based in storage).
struct IndexBound {
    double tau = 0.0;      ///< amplification factor; the bound beats Weyl only if tau < 1
    double gap = 0.0;      ///< denominator gap before subtracting perturbation terms
    double bound = kInfinity;
    bool applicable = false; ///< denominator of tau positive
    double composite = 0.0;  ///< min(bound, weyl); weyl when not applicable
};

struct BoundReport {
    BoundKind kind = BoundKind::Weyl;
    std::optional<Method> method;
    double weyl = 0.0; ///< norm of the perturbation the bound is about
    std::vector<IndexBound> entries;

    std::size_t size() const { return entries.size(); }
    const IndexBound& operator[](std::size_t i) const { return entries[i]; }
};

/// Spectral norm of the perturbation: |sigma_i(M) - sigma_i(M + E)| <= weyl(E) for all i.
double weyl(const Matrix& e);
double weyl(const PerturbationBlocks& f);

/// Values k ranges over in min_k |sigma - sigma_k(block)|. These are the
/// nonnegative eigenvalues of the Jordan-Wielandt embedding of `block`: its
/// singular values, plus 0 when the block is rectangular or empty.
Vector gap_spectrum(const Matrix& block);

/// min_k |s - spectrum_k|
double min_gap(double s, const Vector& spectrum);

/// H = [G1 B; C G2] for the 2x2-block theorem.
struct Block2x2 {
    Matrix g1, b, c, g2;

    Matrix assemble() const;
    void check_conformal() const;
};

/// Structured perturbation bound for H -> H + F with F conformal to H:
///   tau_i   = (max{|B|,|C|} + max{|F12|,|F21|}) / (min_k |sigma_i - sigma_k(G2)| - 2|F|)
///   bound_i = |F11| + 2 max{|F12|,|F21|} tau_i + |F22| tau_i^2
/// valid whenever the denominator is positive. sigma are the singular values of H.
BoundReport block2x2_bound(const Block2x2& h, const PerturbationBlocks& f,
                           std::span<const double> sigma);

/// Special case F = [0 F1; 0 F2]:
///   tau_i   = (max{|B|,|C|} + |F1|) / (min_k |sigma_i - sigma_k(G2)| - 2|F|)
///   bound_i = 2 |F1| tau_i + |F2| tau_i^2
BoundReport right_perturbation_bound(const Block2x2& h, const Matrix& f1, const Matrix& f2,
                                     std::span<const double> sigma);

/// Block tridiagonal matrix. b[q] sits at block (q, q+1), c[q] at (q+1, q)
/// (0-based); blocks may be rectangular.
struct BlockTridiagonal {
    std::vector<Matrix> g;
    std::vector<Matrix> b;
    std::vector<Matrix> c;

    std::size_t blocks() const { return g.size(); }
    std::vector<Eigen::Index> row_offsets() const;
    std::vector<Eigen::Index> col_offsets() const;
    void check_conformal() const;
    Matrix assemble() const;
};

/// Perturbation of block s (1-based): delta_g at (s, s), delta_b at (s, s+1),
/// delta_c at (s+1, s). delta_b and delta_c are empty when s is the last block.
struct TridiagPerturbation {
    std::size_t s = 1;
    Matrix delta_g, delta_b, delta_c;

    /// The full-size perturbation matrix.
    Matrix assemble(const BlockTridiagonal& t) const;
};

/// Per-index internals of the block-tridiagonal bound.
struct TridiagIndexDetail {
    int horizon = -1;           ///< t, or -1 when not applicable
    std::vector<double> deltas; ///< delta_0 .. delta_t
};

struct TridiagBoundReport {
    BoundReport report;
    std::vector<double> gammas;   ///< Gamma_0 .. Gamma_N, Gamma_0 = Gamma_N = 0
    double delta_gamma = 0.0;     ///< max{|dB_s|, |dC_s|}
    double norm_delta_g = 0.0;
    std::vector<double> etas;     ///< eta_1 .. eta_N (index 0 unused)
    std::vector<TridiagIndexDetail> details;
};

/// Bound for a perturbation confined to block s of a block tridiagonal matrix.
/// For index i the horizon t >= 0 is the largest value with s + t <= N - 1 such
/// that sigma_i lies outside [-sigma_max(G_q) - eta_q, sigma_max(G_q) + eta_q]
/// for q = 1..s+t, eta_q = Gamma_q + Gamma_{q-1} + |F|, and every delta_q
/// (q = 0..t) has a positive denominator and is below 1. Then
///   bound_i = |dG_s| (prod_{q=0}^t delta_q)^2 + 2 dGamma_s delta_0 (prod_{q=1}^t delta_q)^2.
/// Gaps are taken against the unperturbed diagonal blocks.
TridiagBoundReport tridiagonal_bound(const BlockTridiagonal& t, const TridiagPerturbation& p,
                                     std::span<const double> sigma);

/// A-priori bound on |sigma_i - sigma_i^method| for i = 1..r from the blocks of
/// the transformed matrix. sigma are the exact singular values of A (at least r
/// of them). Pass the hmt_pair() partition for Method::HMT.
BoundReport forward_bound(const BlockPartition& p, Method method, std::span<const double> sigma);

/// Forward GN bound evaluated on square_head_repartition(p). A heuristic for
/// ell > 0: it is not a theorem and may occasionally fail. The report's weyl is
/// the norm of the actual oversampled GN perturbation.
BoundReport improved_oversampling_bound(const BlockPartition& p, std::span<const double> sigma);

/// A-posteriori GN bound for ell = 0 from computed quantities only:
///   tau_i   = max{|A12|,|A21|} / (min_k |sigma_i^GN - sigma_k(A21 A11^+ A12)| - 2|E_GN|)
///   bound_i = |A22 - A21 A11^+ A12| tau_i^2
/// With approximate_gap the gap becomes sigma_i^GN - |A21 A11^+ A12|.
BoundReport backward_bound(const BlockPartition& p, std::span<const double> sigma_gn,
                           bool approximate_gap);

/// composite_i = min(bound_i, weyl), falling back to weyl when not applicable.
BoundReport composite_min_with_weyl(BoundReport b);

} // namespace svx
