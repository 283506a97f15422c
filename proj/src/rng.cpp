#include "svx/rng.hpp"

namespace svx {

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, Stream stream, std::uint64_t index)
{
    const auto tag = static_cast<std::uint64_t>(stream);
    return splitmix64(seed ^ splitmix64(tag * 0x9E3779B97F4A7C15ULL + index));
}

Matrix Rng::gaussian_matrix(Eigen::Index rows, Eigen::Index cols)
{
    Matrix g(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
        for (Eigen::Index i = 0; i < rows; ++i)
            g(i, j) = normal_(engine_);
    return g;
}

} // namespace svx
