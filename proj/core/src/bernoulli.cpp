#include "weierkit/rational.hpp"

#include <mutex>
#include <vector>

#include "weierkit/errors.hpp"

namespace weierkit {

std::string to_string(const Rational& r)
{
    const auto num = boost::multiprecision::numerator(r);
    const auto den = boost::multiprecision::denominator(r);
    if (den == 1)
        return num.str();
    return num.str() + "/" + den.str();
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

BigInt exact_binomial(int n, int k)
{
    if (n < 0 || k < 0 || k > n)
        return 0;
    BigInt r = 1;
    for (int i = 0; i < k; ++i) {
        r *= (n - i);
        r /= (i + 1);
    }
    return r;
}

namespace {

struct BernoulliTable {
    std::mutex mutex;
    std::vector<Rational> values{Rational(1)};
    std::vector<double> over_factorial{1.0};
};

BernoulliTable& table()
{
    static BernoulliTable t;
    return t;
}

// sum_{j=0}^{k} C(k+1, j) B_j = 0 for k >= 1
void extend_locked(BernoulliTable& t, int k)
{
    while (static_cast<int>(t.values.size()) <= k) {
        const int n = static_cast<int>(t.values.size());
        Rational acc = 0;
        for (int j = 0; j < n; ++j)
            acc += Rational(exact_binomial(n + 1, j)) * t.values[j];
        Rational b = -acc / Rational(n + 1);
        BigInt fact = 1;
        for (int i = 2; i <= n; ++i)
            fact *= i;
        t.over_factorial.push_back(to_double(b / Rational(fact)));
        t.values.push_back(std::move(b));
    }
}

} // namespace

Rational bernoulli(int k)
{
    if (k < 0)
        throw DomainError("bernoulli index must be non-negative");
    auto& t = table();
    std::lock_guard lock(t.mutex);
    extend_locked(t, k);
    return t.values[k];
}

double bernoulli_over_factorial(int k)
{
    if (k < 0)
        throw DomainError("bernoulli index must be non-negative");
    auto& t = table();
    std::lock_guard lock(t.mutex);
    extend_locked(t, k);
    return t.over_factorial[k];
}

} // namespace weierkit
