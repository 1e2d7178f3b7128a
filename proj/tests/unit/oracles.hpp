#pragma once

#include <cmath>
#include <complex>

#include "weierkit/config.hpp"

namespace oracle {

using weierkit::Complex;
using weierkit::nome;

inline double factorial(int n) { return std::tgamma(n + 1.0); }

/// P_m by the raw double series, valid for |q| < |q_w| < 1.
inline Complex P(int m, Complex w, Complex tau, int terms = 400)
{
    const Complex x = nome(w), q = nome(tau);
    Complex s = 0.0;
    for (int n = 1; n <= terms; ++n) {
        const double nn = n;
        s += std::pow(nn, m - 1) * std::pow(x, n) / (1.0 - std::pow(q, n));
        // x^{-n} / (1 - q^{-n}) = -(q / x)^n / (1 - q^n)
        s -= std::pow(-nn, m - 1) * std::pow(q / x, n) / (1.0 - std::pow(q, n));
    }
    const Complex pref = (m % 2 == 0 ? 1.0 : -1.0) / factorial(m - 1);
    return pref * s + (m == 1 ? Complex(-0.5) : Complex(0.0));
}

/// P~_m by the raw series over n in Z.
inline Complex P_tilde(int m, Complex w, Complex z, Complex tau, int terms = 400)
{
    const Complex x = nome(w), q = nome(tau), qz = nome(z);
    Complex s = 1.0 / (1.0 - qz) * (m == 1 ? 1.0 : 0.0);
    for (int n = 1; n <= terms; ++n) {
        const double nn = n;
        s += std::pow(nn, m - 1) * std::pow(x, n) / (1.0 - qz * std::pow(q, n));
        s += std::pow(-nn, m - 1) * std::pow(q / x, n) / (std::pow(q, n) - qz);
    }
    return (m % 2 == 0 ? 1.0 : -1.0) / factorial(m - 1) * s;
}

/// P_k[theta, phi] by the raw series over n in Z + lambda.
inline Complex P_twisted(int k, Complex theta, double lambda, Complex z, Complex tau, int terms = 400)
{
    const bool untwisted = theta == Complex(1.0) && lambda == 0.0;
    Complex s = 0.0;
    for (int j = -terms; j <= terms; ++j) {
        const double n = j + lambda;
        if (n == 0.0 && untwisted)
            continue;
        const Complex c = k == 1 ? 1.0 : std::pow(n, k - 1);
        if (n >= 0.0) {
            s += c * std::exp(weierkit::two_pi_i * z * n) / (1.0 - std::exp(weierkit::two_pi_i * tau * n) / theta);
        } else {
            // e^{2 pi i z n} / (1 - q^n / theta) = -theta e^{2 pi i (z - tau) n} / (1 - theta q^{-n})
            const Complex qm = std::exp(-weierkit::two_pi_i * tau * n);
            s -= c * theta * std::exp(weierkit::two_pi_i * (z - tau) * n) / (1.0 - theta * qm);
        }
    }
    return (k % 2 == 0 ? 1.0 : -1.0) / factorial(k - 1) * s;
}

/// E~_k(z, tau) by the double sum, k >= 1.
inline Complex E_tilde(int k, Complex z, Complex tau, double bernoulli_over_factorial, int terms = 80)
{
    const Complex qz = nome(z), q = nome(tau);
    Complex s = 0.0;
    for (int m = 1; m <= terms; ++m)
        for (int n = 1; n <= terms; ++n)
            s += std::pow(double(n), k - 1) * (std::pow(qz, m) + (k % 2 == 0 ? 1.0 : -1.0) * std::pow(qz, -m)) *
                 std::pow(q, m * n);
    const Complex delta = k == 1 ? -qz / (qz - 1.0) : 0.0;
    return delta - bernoulli_over_factorial + s / factorial(k - 1);
}

} // namespace oracle
