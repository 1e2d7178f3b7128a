#pragma once

#include <map>
#include <string>
#include <vector>

#include "weierkit/config.hpp"
#include "weierkit/rational.hpp"
#include "weierkit/series.hpp"

namespace weierkit {

struct RationalKernelSpec {
    int n = 0;
    int m = 0;
};

/// coeff * z^z_power * w^w_power * (z - w)^{-pole_order}
struct RationalTerm {
    Rational coeff;
    int z_power = 0;
    int w_power = 0;
    int pole_order = 0;
};

/// f_{n,m}(z, w) = z^{-n}/m! (d/dw)^m w^n/(z - w) as an exact sum of RationalTerms.
class RationalKernel {
public:
    /// Shared, lazily built kernel; safe to call from several threads.
    static const RationalKernel& get(RationalKernelSpec sum);

    explicit RationalKernel(RationalKernelSpec sum);

    RationalKernelSpec sum() const { return spec_; }
    const std::vector<RationalTerm>& terms() const { return terms_; }

    /// Throws PoleError at z = w, or at z = 0 when n > 0.
    Complex evaluate(Complex z, Complex w) const;

    /// The kernel differentiated once more in w (unnormalised).
    std::vector<RationalTerm> w_derivative() const;

    std::string to_string() const;

private:
    RationalKernelSpec spec_;
    std::vector<RationalTerm> terms_;
};

/// sum_e c_e(z) w^e for lowest <= e < order, each c_e an exact Laurent polynomial in z.
struct RationalLaurentSeries {
    int lowest = 0;
    int order = 0;
    std::vector<std::map<int, Rational>> coefficients; ///< index e - lowest, z-power -> value

    const std::map<int, Rational>& coefficient(int e) const;
    Complex evaluate(Complex z, Complex w) const;
    /// The series in w with coefficients evaluated at z.
    TruncatedSeries at(Complex z) const;
};

Complex f_rational(RationalKernelSpec sum, Complex z, Complex w);

/// Taylor expansion of the closed form on |w| < |z|, w-exponents below `order`.
RationalLaurentSeries f_rational_expansion(RationalKernelSpec sum, int order);

} // namespace weierkit
