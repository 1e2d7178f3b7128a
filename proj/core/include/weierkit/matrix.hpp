#pragma once

#include <Eigen/Dense>

#include "weierkit/config.hpp"

namespace weierkit {

using Matrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;
using ColVector = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;
using RowVector = Eigen::Matrix<Complex, 1, Eigen::Dynamic>;

/// (||M^k v|| / ||v||)^{1/k} after k power iterations from the all-ones vector.
double spectral_radius_estimate(const Matrix& m, int iterations = 30);

/// Sum_{k >= 0} M^k, stopping once a term is negligible. Throws ConvergenceError
/// if `max_terms` is reached first.
Matrix neumann_series(const Matrix& m, int max_terms = 2000);

/// (I - M)^{-1} by LU.
Matrix inverse_one_minus(const Matrix& m);

} // namespace weierkit
