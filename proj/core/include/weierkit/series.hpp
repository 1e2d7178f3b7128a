#pragma once

#include <span>
#include <vector>

#include "weierkit/config.hpp"

namespace weierkit {

/// Truncated Laurent series in a single formal variable.
///
/// Coefficient i holds the exponent `lowest_exponent() + i`; exponents at or beyond
/// `truncation_order()` are unknown and never reported.
class TruncatedSeries {
public:
    TruncatedSeries() = default;
    TruncatedSeries(int lowest_exponent, std::vector<Complex> coefficients);

    /// Zero series known up to (not including) `truncation_order`.
    static TruncatedSeries zero(int lowest_exponent, int truncation_order);
    /// The monomial c x^exponent, known up to `truncation_order`.
    static TruncatedSeries monomial(Complex c, int exponent, int truncation_order);

    int lowest_exponent() const noexcept { return lowest_; }
    int truncation_order() const noexcept { return lowest_ + static_cast<int>(coeffs_.size()); }
    std::span<const Complex> coefficients() const noexcept { return coeffs_; }

    /// Coefficient of x^exponent; zero below the lowest exponent.
    /// Throws DomainError at or beyond the truncation order.
    Complex coefficient(int exponent) const;

    /// Sum of the known terms at x.
    Complex evaluate(Complex x) const;

    TruncatedSeries truncated(int order) const;

    friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b);
    friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b);
    friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);
    friend TruncatedSeries operator*(Complex c, const TruncatedSeries& a);

private:
    int lowest_ = 0;
    std::vector<Complex> coeffs_;
};

TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b);

/// 1/(1-x), using the expansion in x^{-1} when |x| > 1.
/// Throws UnitCircleError when | |x| - 1 | <= abs_tol.
Complex geometric_resum(Complex x, double abs_tol = 1e-13);

} // namespace weierkit
