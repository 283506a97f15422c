#include "svx/synthgen.hpp"

#include "svx/format.hpp"
#include "svx/rng.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace svx {

std::string_view to_string(ProfileKind kind)
{
    switch (kind) {
    case ProfileKind::Exponential: return "exponential";
    case ProfileKind::Algebraic: return "algebraic";
    case ProfileKind::Custom: return "custom";
    }
    return "custom";
}

SvProfile SvProfile::custom(std::vector<double> values)
{
    if (values.empty())
        throw DimensionError("sv profile must not be empty");
    if (!(values.front() > 0.0))
        throw PreconditionError("sv profile: leading value must be positive");
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i]) || values[i] < 0.0)
            throw PreconditionError("sv profile: values must be finite and nonnegative");
        if (i > 0 && values[i] > values[i - 1])
            throw PreconditionError("sv profile: values must be descending");
    }
    SvProfile p;
    p.kind = ProfileKind::Custom;
    p.values = Eigen::Map<const Vector>(values.data(), static_cast<Eigen::Index>(values.size()));
    return p;
}

SvProfile sv_profile(ProfileKind kind, Eigen::Index n)
{
    if (n < 2)
        throw DimensionError("sv_profile: n must be at least 2");
    SvProfile p;
    p.kind = kind;
    p.values.resize(n);
    switch (kind) {
    case ProfileKind::Exponential: {
        const double rate = 30.0 / static_cast<double>(n - 1) * std::log(10.0);
        for (Eigen::Index i = 0; i < n; ++i)
            p.values(i) = std::exp(-static_cast<double>(i) * rate);
        break;
    }
    case ProfileKind::Algebraic:
        for (Eigen::Index i = 0; i < n; ++i)
            p.values(i) = std::pow(1.0 / static_cast<double>(i + 1), 4);
        break;
    case ProfileKind::Custom:
        throw PreconditionError("sv_profile: use SvProfile::custom for custom profiles");
    }
    return p;
}

Matrix haar_orthonormal(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed)
{
    if (rows < cols || cols < 1)
        throw DimensionError("haar_orthonormal: need rows >= cols >= 1");
    Rng rng(seed);
    const Matrix g = rng.gaussian_matrix(rows, cols);
    kernels::ThinQr qr = kernels::thin_qr(g);
    for (Eigen::Index j = 0; j < cols; ++j)
        if (qr.r(j, j) < 0.0)
            qr.q.col(j) *= -1.0;
    return qr.q;
}

SyntheticMatrix assemble_synthetic(const SvProfile& profile, Eigen::Index m, std::uint64_t seed)
{
    const Eigen::Index n = profile.size();
    if (n < 1 || m < n)
        throw DimensionError("assemble_synthetic: need m >= n >= 1 (m = " + std::to_string(m) +
                             ", n = " + std::to_string(n) + ")");
    SyntheticMatrix s;
    s.seed = seed;
    s.sigma_true = profile;
    s.u_true = haar_orthonormal(m, n, derive_seed(seed, Stream::HaarLeft));
    s.v_true = haar_orthonormal(n, n, derive_seed(seed, Stream::HaarRight));
    s.a = s.u_true * profile.values.asDiagonal() * s.v_true.transpose();
    return s;
}

void write_matrix_market(std::ostream& out, const Matrix& m)
{
    out << "%%MatrixMarket matrix array real general\n";
    out << m.rows() << ' ' << m.cols() << '\n';
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            out << format_double(m(i, j)) << '\n';
}

void write_matrix_market(const std::filesystem::path& path, const Matrix& m)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    write_matrix_market(out, m);
    if (!out)
        throw std::runtime_error("write failed for '" + path.string() + "'");
}

Matrix read_matrix_market(std::istream& in)
{
    std::string line;
    if (!std::getline(in, line) || line.rfind("%%MatrixMarket matrix array real general", 0) != 0)
        throw std::runtime_error("read_matrix_market: missing array header");
    while (std::getline(in, line) && !line.empty() && line[0] == '%') {
    }
    std::istringstream dims(line);
    Eigen::Index rows = 0;
    Eigen::Index cols = 0;
    if (!(dims >> rows >> cols) || rows < 0 || cols < 0)
        throw std::runtime_error("read_matrix_market: bad size line '" + line + "'");
    Matrix m(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
        for (Eigen::Index i = 0; i < rows; ++i) {
            if (!std::getline(in, line))
                throw std::runtime_error("read_matrix_market: truncated data");
            m(i, j) = parse_double(line);
        }
    return m;
}

} // namespace svx
