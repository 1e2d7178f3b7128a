#pragma once

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace weierkit {

/// Exact rational number (arbitrary precision numerator and denominator).
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// "p/q", or "p" when the denominator is one.
std::string to_string(const Rational& r);

double to_double(const Rational& r);

/// Exact binomial coefficient C(n, k) for n >= 0; zero when k < 0 or k > n.
BigInt exact_binomial(int n, int k);

/// Exact k-th Bernoulli number with the convention (e^z - 1)^{-1} = sum B_k z^{k-1}/k!,
/// so B_1 = -1/2. Thread-safe; values are cached.
Rational bernoulli(int k);

/// B_k / k! as a double, cached. Used by every Eisenstein-type constant term.
double bernoulli_over_factorial(int k);

} // namespace weierkit
