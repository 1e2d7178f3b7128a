#pragma once

#include <complex>
#include <numbers>

#include "weierkit/errors.hpp"

namespace weierkit {

using Complex = std::complex<double>;

inline constexpr Complex two_pi_i{0.0, 2.0 * std::numbers::pi};

/// Numerical knobs shared by every evaluator.
struct ToleranceConfig {
    double abs_tol = 1e-13;
    double rel_tol = 1e-10;
    int q_order = 50;     ///< maximal q-degree (shell count) retained in q-series
    int matrix_size = 16; ///< truncation N of the infinite sewing matrices

    /// Throws DomainError unless every field is in range.
    void validate() const
    {
        if (!(abs_tol > 0.0) || !(rel_tol > 0.0))
            throw DomainError("tolerances must be positive");
        if (q_order < 4)
            throw DomainError("q_order must be at least 4");
        if (matrix_size < 2)
            throw DomainError("matrix_size must be at least 2");
    }
};

/// A value together with an estimate of the truncation error committed computing it.
struct Evaluation {
    Complex value{};
    double truncation_error = 0.0;
};

/// e^{2 pi i x}
inline Complex nome(Complex x) { return std::exp(two_pi_i * x); }

inline bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

} // namespace weierkit
