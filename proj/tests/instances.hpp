#pragma once

// Random instances for the structured perturbation bounds.

#include "support.hpp"
#include "svx/bounds.hpp"

#include <random>

namespace svx::test {

inline double uniform(std::mt19937_64& g, double lo, double hi)
{
    return std::uniform_real_distribution<double>(lo, hi)(g);
}

inline Eigen::Index uniform_int(std::mt19937_64& g, Eigen::Index lo, Eigen::Index hi)
{
    return std::uniform_int_distribution<Eigen::Index>(lo, hi)(g);
}

// rows x cols matrix with spectral norm exactly `norm` (zero if norm == 0).
inline Matrix with_norm(Eigen::Index rows, Eigen::Index cols, double norm, std::uint64_t seed)
{
    if (rows == 0 || cols == 0)
        return Matrix::Zero(rows, cols);
    const Matrix g = gaussian(rows, cols, seed);
    return g * (norm / jacobi_singular_values(g)(0));
}

inline Vector uniform_values(std::mt19937_64& g, Eigen::Index k, double lo, double hi)
{
    Vector v(k);
    for (Eigen::Index i = 0; i < k; ++i)
        v(i) = uniform(g, lo, hi);
    std::sort(v.data(), v.data() + k, [](double x, double y) { return x > y; });
    return v;
}

struct Block2x2Instance {
    Block2x2 h;
    PerturbationBlocks f;
};

// G1 carries singular values in [1, 2], G2 stays below 0.3, the coupling
// blocks below 0.1, and |F| below 0.1 times the resulting gap. Total size
// m + n <= 60. `pattern` selects which blocks of F are populated:
// 0 all four, 1 right column only, 2 F11 only, 3 off-diagonal only.
inline Block2x2Instance random_block2x2(std::uint64_t seed, int pattern = 0)
{
    std::mt19937_64 g(seed);
    const Eigen::Index m1 = uniform_int(g, 1, 12);
    const Eigen::Index n1 = uniform_int(g, 1, 12);
    const Eigen::Index m2 = uniform_int(g, 1, 18);
    const Eigen::Index n2 = uniform_int(g, 1, 18);

    Block2x2Instance in;
    in.h.g1 = with_singular_values(m1, n1, uniform_values(g, std::min(m1, n1), 1.0, 2.0), seed * 11 + 1);
    in.h.g2 = with_singular_values(m2, n2, uniform_values(g, std::min(m2, n2), 0.0, 0.3), seed * 11 + 2);
    in.h.b = with_norm(m1, n2, uniform(g, 0.0, 0.1), seed * 11 + 3);
    in.h.c = with_norm(m2, n1, uniform(g, 0.0, 0.1), seed * 11 + 4);

    Matrix f = gaussian(m1 + m2, n1 + n2, seed * 11 + 5);
    switch (pattern) {
    case 1: f.leftCols(n1).setZero(); break;
    case 2:
        f.rightCols(n2).setZero();
        f.bottomRows(m2).setZero();
        break;
    case 3:
        f.topLeftCorner(m1, n1).setZero();
        f.bottomRightCorner(m2, n2).setZero();
        break;
    default: break;
    }
    const double gap = 1.0 - 0.3;
    f *= uniform(g, 0.0, 0.1 * gap) / std::max(jacobi_singular_values(f)(0), 1e-300);
    in.f.f11 = f.topLeftCorner(m1, n1);
    in.f.f12 = f.topRightCorner(m1, n2);
    in.f.f21 = f.bottomLeftCorner(m2, n1);
    in.f.f22 = f.bottomRightCorner(m2, n2);
    in.f.norm_f = kernels::spectral_norm(in.f.assemble());
    return in;
}

struct TridiagInstance {
    BlockTridiagonal t;
    TridiagPerturbation p;
};

// The last diagonal block dominates (singular values in [3, 4]); the others
// stay below 0.3 and the couplings below 0.2. Block sizes are at most 8, the
// perturbation sits in a random block s < N with norms below 0.05.
inline TridiagInstance random_tridiagonal(std::uint64_t seed, std::size_t blocks)
{
    std::mt19937_64 g(seed);
    const auto n = blocks;
    std::vector<Eigen::Index> rows(n);
    std::vector<Eigen::Index> cols(n);
    for (std::size_t q = 0; q < n; ++q) {
        rows[q] = uniform_int(g, 1, 8);
        cols[q] = uniform_int(g, 1, 8);
    }
    TridiagInstance in;
    std::uint64_t sub = seed * 101;
    for (std::size_t q = 0; q < n; ++q) {
        const bool dominant = q + 1 == n;
        const Eigen::Index k = std::min(rows[q], cols[q]);
        in.t.g.push_back(with_singular_values(rows[q], cols[q],
                                              dominant ? uniform_values(g, k, 3.0, 4.0)
                                                       : uniform_values(g, k, 0.0, 0.3),
                                              ++sub));
    }
    for (std::size_t q = 0; q + 1 < n; ++q) {
        in.t.b.push_back(with_norm(rows[q], cols[q + 1], uniform(g, 0.0, 0.2), ++sub));
        in.t.c.push_back(with_norm(rows[q + 1], cols[q], uniform(g, 0.0, 0.2), ++sub));
    }
    const auto s = static_cast<std::size_t>(uniform_int(g, 1, static_cast<Eigen::Index>(n) - 1));
    in.p.s = s;
    in.p.delta_g = with_norm(rows[s - 1], cols[s - 1], uniform(g, 0.0, 0.05), ++sub);
    in.p.delta_b = with_norm(rows[s - 1], cols[s], uniform(g, 0.0, 0.05), ++sub);
    in.p.delta_c = with_norm(rows[s], cols[s - 1], uniform(g, 0.0, 0.05), ++sub);
    return in;
}

// |sigma_i(H) - sigma_i(H + F)| for every i.
inline Vector singular_value_changes(const Matrix& h, const Matrix& f)
{
    return (jacobi_singular_values(h) - jacobi_singular_values(h + f)).cwiseAbs();
}

} // namespace svx::test
