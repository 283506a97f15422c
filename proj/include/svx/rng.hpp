#pragma once

#include "svx/kernels.hpp"

#include <cstdint>
#include <random>

namespace svx {

/// Independent random streams drawn from one user seed. Every consumer of
/// randomness gets its own stream so that adding a draw in one place never
/// shifts the numbers seen elsewhere.
enum class Stream : std::uint64_t {
    HaarLeft = 1,    ///< left singular factor U of a synthetic matrix
    HaarRight = 2,   ///< right singular factor V
    SketchRight = 3, ///< Omega_1 (m x r), sketches the right subspace via A^T
    SketchLeft = 4,  ///< Omega_2 (n x (r+ell)), sketches the left subspace via A
    RandomLeft = 5,  ///< random U-tilde with no contact with A
    RandomRight = 6, ///< random V-tilde
    Trial = 7,       ///< per-trial master seed inside an experiment
};

std::uint64_t splitmix64(std::uint64_t x);

/// Stream-splitting rule:
///   sub_seed = splitmix64(seed ^ splitmix64(tag * 0x9E3779B97F4A7C15 + index))
/// where tag is the numeric value of `stream` and `index` distinguishes
/// repeated uses of the same stream (e.g. the trial number).
std::uint64_t derive_seed(std::uint64_t seed, Stream stream, std::uint64_t index = 0);

/// mt19937_64 with a standard normal transform. Deterministic per seed for a
/// given standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double gaussian() { return normal_(engine_); }

    /// rows x cols standard Gaussian matrix, filled in column-major order.
    Matrix gaussian_matrix(Eigen::Index rows, Eigen::Index cols);

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

} // namespace svx
