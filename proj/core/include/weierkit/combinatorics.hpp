#pragma once

#include <cmath>

namespace weierkit {

/// C(n, k) in floating point for real n (falling factorial over k!); zero for k < 0.
inline double binomial_real(double n, int k)
{
    if (k < 0)
        return 0.0;
    double r = 1.0;
    for (int i = 0; i < k; ++i)
        r = r * (n - i) / (i + 1);
    return r;
}

/// C(n, k) for integers with C(n, k) = 0 outside 0 <= k <= n (n >= 0).
inline double binomial(int n, int k)
{
    if (k < 0 || n < 0 || k > n)
        return 0.0;
    return binomial_real(n, k);
}

inline double factorial(int n) { return std::tgamma(n + 1.0); }

inline int sign_power(int n) { return (n % 2 == 0) ? 1 : -1; }

} // namespace weierkit
