#pragma once

#include <optional>

#include "weierkit/config.hpp"

namespace weierkit {

/// Li_{-i}(x) = sum_{n >= 1} n^i x^n, continued meromorphically to x != 1.
/// Throws PoleError at x = 1.
Complex polylog_neg(int i, Complex x);

/// Parameters of the bilateral Lambert sum
///
///     S(w) = sum_{j in Z, j != excluded} (j + shift)^power x^j / (1 - a q^j),
///
/// with x = e^{2 pi i w} and q = e^{2 pi i tau}. Every genus-one kernel in the
/// library (P_m, P_{m,lambda}, the quasi-Jacobi P~_m and the twisted P_k[theta, phi])
/// is a prefactor times one of these.
struct LambertSum {
    int power = 0;
    double shift = 0.0;
    Complex a{1.0, 0.0};
    /// log|a|; computed from `a` when absent. Supplying it keeps |a q^j| = 1 exact
    /// for a = q^lambda with integer lambda.
    std::optional<double> log_abs_a;
    std::optional<int> excluded;
};

/// Evaluates S(w) as a meromorphic function of w.
///
/// Terms with |a q^j| < 1 are split as 1 + r/(1-r), terms with |a q^j| > 1 as
/// -r^{-1}/(1 - r^{-1}), and the divergent sum over (j + shift)^power x^j is summed in
/// closed form, which is the two-sided geometric resummation. The result converges on
/// |q| < |x| < |q|^{-1}; other w are first reduced into the strip |Im w| <= Im tau / 2
/// using S(w + tau) = a^{-1} (S(w) + excluded term).
///
/// Throws PoleError at w in Z + Z tau or when a q^j = 1 for a retained j.
Evaluation lambert_sum(const LambertSum& sum, Complex w, Complex tau, const ToleranceConfig& cfg);

} // namespace weierkit
