#include "weierkit/matrix.hpp"

#include <cmath>

namespace weierkit {

double spectral_radius_estimate(const Matrix& m, int iterations)
{
    if (m.rows() == 0)
        return 0.0;
    ColVector v = ColVector::Ones(m.rows());
    const double start = v.norm();
    double log_growth = 0.0;
    for (int i = 0; i < iterations; ++i) {
        v = m * v;
        const double n = v.norm();
        if (n == 0.0)
            return 0.0;
        log_growth += std::log(n);
        v /= n;
    }
    return std::exp((log_growth - std::log(start)) / iterations);
}

Matrix neumann_series(const Matrix& m, int max_terms)
{
    Matrix sum = Matrix::Identity(m.rows(), m.cols());
    Matrix term = sum;
    for (int k = 1; k < max_terms; ++k) {
        term = term * m;
        sum += term;
        if (term.cwiseAbs().maxCoeff() <= 1e-18 * std::max(1.0, sum.cwiseAbs().maxCoeff()))
            return sum;
    }
    throw ConvergenceError("Neumann series did not converge");
}

Matrix inverse_one_minus(const Matrix& m)
{
    const Matrix a = Matrix::Identity(m.rows(), m.cols()) - m;
    return a.partialPivLu().solve(Matrix::Identity(m.rows(), m.cols()));
}

} // namespace weierkit
