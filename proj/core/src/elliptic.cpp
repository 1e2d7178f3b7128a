#include "weierkit/elliptic.hpp"

#include <cmath>
#include <limits>

#include "weierkit/combinatorics.hpp"
#include "weierkit/lambert.hpp"
#include "weierkit/rational.hpp"

namespace weierkit {

namespace {

void require_upper_half_plane(Complex tau)
{
    if (!(tau.imag() > 0.0) || !is_finite(tau))
        throw DomainError("tau must lie in the upper half-plane");
}

void require_positive(int m, const char* what)
{
    if (m < 1)
        throw DomainError(std::string(what) + " index must be positive");
}

Evaluation scaled(Evaluation e, Complex c)
{
    e.value *= c;
    e.truncation_error *= std::abs(c);
    return e;
}

// (-1)^m / (m-1)!
double p_prefactor(int m) { return sign_power(m) / factorial(m - 1); }

} // namespace

TwistData TwistData::from_angles(double theta_angle, double lambda)
{
    return {nome(Complex(theta_angle)), nome(Complex(lambda)), lambda};
}

void TwistData::validate(double tol) const
{
    if (std::abs(std::abs(theta) - 1.0) > tol || std::abs(std::abs(phi) - 1.0) > tol)
        throw DomainError("twist parameters must have modulus one");
    if (lambda < 0.0 || lambda >= 1.0)
        throw DomainError("twist lambda must lie in [0, 1)");
    if (std::abs(phi - nome(Complex(lambda))) > tol)
        throw DomainError("twist phi must equal exp(2 pi i lambda)");
}

Evaluation eisenstein_E(int k, Complex tau, const ToleranceConfig& cfg)
{
    require_upper_half_plane(tau);
    if (k < 0)
        throw DomainError("Eisenstein weight must be non-negative");
    if (k == 0)
        return {Complex(-1.0), 0.0};
    if (k % 2 == 1)
        return {};

    const Complex q = nome(tau);
    const double log_abs_q = -2.0 * std::numbers::pi * tau.imag();
    const double arg_q = std::arg(q);
    const double log_norm = std::log(2.0) - std::lgamma(static_cast<double>(k));
    // hump of n^{k-1} |q|^n
    const double peak = (k - 1) / -log_abs_q;

    Evaluation out;
    out.value = -bernoulli_over_factorial(k);
    Complex sum{};
    double last = 0.0;
    for (int n = 1;; ++n) {
        const double log_mag = log_norm + (k - 1) * std::log(static_cast<double>(n)) + n * log_abs_q;
        const Complex qn = std::polar(1.0, n * arg_q) * std::exp(n * log_abs_q);
        const Complex term = std::polar(std::exp(log_mag), n * arg_q) / (1.0 - qn);
        sum += term;
        last = std::abs(term);
        const bool past_peak = n > peak;
        if (past_peak && last <= 1e-18 * std::max(1e-300, std::abs(out.value + sum)))
            break;
        if (n >= std::max(cfg.q_order, static_cast<int>(peak) + 1))
            break;
    }
    out.value += sum;
    out.truncation_error = last;
    return out;
}

Evaluation eisenstein_transform(int k, const Modular& gamma, Complex tau, const ToleranceConfig& cfg)
{
    if (gamma.a * gamma.d - gamma.b * gamma.c != 1)
        throw DomainError("modular matrix must have determinant one");
    const Complex j = static_cast<double>(gamma.c) * tau + static_cast<double>(gamma.d);
    if (std::abs(j) == 0.0)
        throw DomainError("c tau + d vanishes");
    auto e = eisenstein_E(k, tau, cfg);
    const Complex factor = std::pow(j, k);
    Evaluation out{factor * e.value, std::abs(factor) * e.truncation_error};
    if (k == 2)
        out.value -= static_cast<double>(gamma.c) * j / two_pi_i;
    return out;
}

Evaluation eisenstein_E_lambda(int k, double lambda, Complex tau, const ToleranceConfig& cfg)
{
    if (k < 0)
        throw DomainError("Eisenstein weight must be non-negative");
    Evaluation out;
    double coeff = 1.0;
    for (int j = 0; j <= k; ++j) {
        if (j > 0)
            coeff *= lambda / j;
        const auto e = eisenstein_E(k - j, tau, cfg);
        out.value += coeff * e.value;
        out.truncation_error += std::abs(coeff) * e.truncation_error;
    }
    return out;
}

Evaluation eisenstein_E_tilde(int k, Complex z, Complex tau, const ToleranceConfig& cfg)
{
    require_upper_half_plane(tau);
    if (k < 0)
        throw DomainError("E-tilde weight must be non-negative");
    if (k == 0)
        return {Complex(-1.0), 0.0};

    const Complex qz = nome(z);
    const Complex qz_inv = 1.0 / qz;
    const Complex q = nome(tau);
    Evaluation out;
    if (k == 1) {
        if (std::abs(qz - 1.0) <= cfg.abs_tol)
            throw PoleError("E-tilde_1 has a pole at q_z = 1");
        out.value -= qz / (qz - 1.0);
    }
    out.value -= bernoulli_over_factorial(k);

    const auto lambert = [&](Complex r) {
        if (std::abs(1.0 - r) <= cfg.abs_tol)
            throw PoleError("E-tilde evaluated at z in Z tau + Z");
        return r / (1.0 - r);
    };
    const double sign = sign_power(k);
    const double norm = 1.0 / factorial(k - 1);
    const double log_abs_q = std::log(std::abs(q));
    const double spread = std::abs(std::log(std::abs(qz)));
    Complex sum{};
    Complex qn = 1.0;
    double last = 0.0;
    for (int n = 1;; ++n) {
        qn *= q;
        const double nk = std::pow(static_cast<double>(n), k - 1);
        const Complex term = norm * nk * (lambert(qz * qn) + sign * lambert(qz_inv * qn));
        sum += term;
        last = std::abs(term);
        // geometric regime once |q|^n e^{spread} < 1/2
        const bool settled = n * log_abs_q + spread < -0.7 && n > (k - 1) / -log_abs_q;
        if (settled && last <= 1e-18 * std::max(1.0, std::abs(sum)))
            break;
        if (n >= cfg.q_order && settled)
            break;
        if (n >= 20 * cfg.q_order)
            break;
    }
    out.value += sum;
    out.truncation_error = last;
    return out;
}

TruncatedSeries eisenstein_q_expansion(int k, int order)
{
    if (order < 1)
        throw DomainError("q-expansion order must be positive");
    if (k == 0)
        return TruncatedSeries::monomial(-1.0, 0, order);
    if (k < 0 || k % 2 == 1)
        return TruncatedSeries::zero(0, order);
    std::vector<Complex> c(order);
    c[0] = -bernoulli_over_factorial(k);
    const double norm = 2.0 / factorial(k - 1);
    // n^{k-1} q^n / (1 - q^n) = sum_{d >= 1} n^{k-1} q^{nd}
    for (int n = 1; n < order; ++n)
        for (int e = n; e < order; e += n)
            c[e] += norm * std::pow(static_cast<double>(n), k - 1);
    return {0, std::move(c)};
}

Evaluation weierstrass_P_zhu(int m, Complex w, Complex tau, const ToleranceConfig& cfg)
{
    require_upper_half_plane(tau);
    require_positive(m, "Weierstrass");
    LambertSum sum;
    sum.power = m - 1;
    sum.a = 1.0;
    sum.log_abs_a = 0.0;
    sum.excluded = 0;
    return scaled(lambert_sum(sum, w, tau, cfg), p_prefactor(m));
}

Evaluation weierstrass_P(int m, Complex w, Complex tau, const ToleranceConfig& cfg)
{
    auto e = weierstrass_P_zhu(m, w, tau, cfg);
    if (m == 1)
        e.value -= 0.5;
    return e;
}

Evaluation weierstrass_P_lambda(int m, double lambda, Complex w, Complex tau, const ToleranceConfig& cfg)
{
    require_upper_half_plane(tau);
    require_positive(m, "Weierstrass");
    if (!std::isfinite(lambda))
        throw DomainError("lambda must be finite");
    LambertSum sum;
    sum.power = m - 1;
    sum.a = nome(lambda * tau);
    sum.log_abs_a = -2.0 * std::numbers::pi * lambda * tau.imag();
    if (lambda == std::round(lambda))
        sum.excluded = -static_cast<int>(std::lround(lambda));
    return scaled(lambert_sum(sum, w, tau, cfg), p_prefactor(m));
}

Evaluation weierstrass_P_tilde(int m, Complex w, Complex z, Complex tau, const ToleranceConfig& cfg)
{
    require_upper_half_plane(tau);
    require_positive(m, "P-tilde");
    LambertSum sum;
    sum.power = m - 1;
    sum.a = nome(z);
    sum.log_abs_a = -2.0 * std::numbers::pi * z.imag();
    return scaled(lambert_sum(sum, w, tau, cfg), p_prefactor(m));
}

Evaluation weierstrass_P_tilde_regular(int m, Complex w, Complex z, Complex tau, const ToleranceConfig& cfg)
{
    require_upper_half_plane(tau);
    require_positive(m, "P-tilde");
    LambertSum sum;
    sum.power = m - 1;
    sum.a = nome(z);
    sum.log_abs_a = -2.0 * std::numbers::pi * z.imag();
    sum.excluded = 0;
    return scaled(lambert_sum(sum, w, tau, cfg), p_prefactor(m));
}

Evaluation twisted_P(int k, const TwistData& twist, Complex z, Complex tau, const ToleranceConfig& cfg)
{
    require_upper_half_plane(tau);
    require_positive(k, "twisted Weierstrass");
    twist.validate(std::max(cfg.abs_tol, 1e-12));
    // n = j + lambda: q_z^n = e^{2 pi i lambda z} x^j, theta^{-1} q^n = (theta^{-1} q^lambda) q^j
    LambertSum sum;
    sum.power = k - 1;
    sum.shift = twist.lambda;
    sum.a = nome(twist.lambda * tau) / twist.theta;
    sum.log_abs_a = -2.0 * std::numbers::pi * twist.lambda * tau.imag();
    if (twist.untwisted())
        sum.excluded = 0;
    const Complex prefactor = p_prefactor(k) * nome(twist.lambda * z);
    return scaled(lambert_sum(sum, z, tau, cfg), prefactor);
}

} // namespace weierkit
