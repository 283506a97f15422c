#include "svx/kernels.hpp"

#include <algorithm>

namespace svx::kernels {

namespace {

// Rows handled by one work item. Fixed, so the split never depends on the
// thread count.
constexpr Eigen::Index kRowBlock = 64;

// c = a * x. Every c(i, j) accumulates over p in ascending order, whichever
// thread owns it, so the parallel and serial paths agree bit for bit.
Matrix multiply_impl(const Matrix& a, const Matrix& x, bool parallel)
{
    if (a.cols() != x.rows())
        throw DimensionError("multiply: a is " + std::to_string(a.rows()) + "x" +
                             std::to_string(a.cols()) + ", x has " + std::to_string(x.rows()) +
                             " rows");
    const Eigen::Index m = a.rows();
    const Eigen::Index n = a.cols();
    const Eigen::Index k = x.cols();
    Matrix c = Matrix::Zero(m, k);
    const Eigen::Index blocks = (m + kRowBlock - 1) / kRowBlock;

    const double* ap = a.data();
    const double* xp = x.data();
    double* cp = c.data();

#pragma omp parallel for collapse(2) schedule(static) if (parallel)
    for (Eigen::Index j = 0; j < k; ++j) {
        for (Eigen::Index b = 0; b < blocks; ++b) {
            const Eigen::Index lo = b * kRowBlock;
            const Eigen::Index hi = std::min(m, lo + kRowBlock);
            double* cj = cp + j * m;
            for (Eigen::Index p = 0; p < n; ++p) {
                const double s = xp[p + j * n];
                const double* ac = ap + p * m;
                for (Eigen::Index i = lo; i < hi; ++i)
                    cj[i] += ac[i] * s;
            }
        }
    }
    return c;
}

// c = a^T * y, c(i, j) = <a(:, i), y(:, j)> summed in ascending row order.
Matrix multiply_adjoint_impl(const Matrix& a, const Matrix& y, bool parallel)
{
    if (a.rows() != y.rows())
        throw DimensionError("multiply_adjoint: a is " + std::to_string(a.rows()) + "x" +
                             std::to_string(a.cols()) + ", y has " + std::to_string(y.rows()) +
                             " rows");
    const Eigen::Index m = a.rows();
    const Eigen::Index n = a.cols();
    const Eigen::Index k = y.cols();
    Matrix c(n, k);

    const double* ap = a.data();
    const double* yp = y.data();
    double* cp = c.data();

#pragma omp parallel for collapse(2) schedule(static) if (parallel)
    for (Eigen::Index j = 0; j < k; ++j) {
        for (Eigen::Index i = 0; i < n; ++i) {
            const double* ai = ap + i * m;
            const double* yj = yp + j * m;
            double acc = 0.0;
            for (Eigen::Index p = 0; p < m; ++p)
                acc += ai[p] * yj[p];
            cp[i + j * n] = acc;
        }
    }
    return c;
}

} // namespace

Matrix multiply(const Matrix& a, const Matrix& x) { return multiply_impl(a, x, true); }

Matrix multiply_adjoint(const Matrix& a, const Matrix& y)
{
    return multiply_adjoint_impl(a, y, true);
}

Matrix multiply_serial(const Matrix& a, const Matrix& x) { return multiply_impl(a, x, false); }

Matrix multiply_adjoint_serial(const Matrix& a, const Matrix& y)
{
    return multiply_adjoint_impl(a, y, false);
}

} // namespace svx::kernels
