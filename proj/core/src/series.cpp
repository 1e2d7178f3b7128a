#include "weierkit/series.hpp"

#include <algorithm>
#include <limits>

namespace weierkit {

namespace {

int checked_add(long long a, long long b)
{
    const long long r = a + b;
    if (r > std::numeric_limits<int>::max() / 2 || r < std::numeric_limits<int>::min() / 2)
        throw OverflowError("series exponent out of range");
    return static_cast<int>(r);
}

} // namespace

TruncatedSeries::TruncatedSeries(int lowest_exponent, std::vector<Complex> coefficients)
    : lowest_(lowest_exponent), coeffs_(std::move(coefficients))
{
    checked_add(lowest_, static_cast<long long>(coeffs_.size()));
    for (const auto& c : coeffs_)
        if (!is_finite(c))
            throw DomainError("non-finite series coefficient");
}

TruncatedSeries TruncatedSeries::zero(int lowest_exponent, int truncation_order)
{
    if (truncation_order < lowest_exponent)
        throw DomainError("truncation order below lowest exponent");
    return {lowest_exponent, std::vector<Complex>(truncation_order - lowest_exponent)};
}

TruncatedSeries TruncatedSeries::monomial(Complex c, int exponent, int truncation_order)
{
    if (truncation_order <= exponent)
        return zero(truncation_order, truncation_order);
    auto s = zero(exponent, truncation_order);
    s.coeffs_[0] = c;
    return s;
}

Complex TruncatedSeries::coefficient(int exponent) const
{
    if (exponent >= truncation_order())
        throw DomainError("coefficient requested beyond truncation order");
    if (exponent < lowest_)
        return {};
    return coeffs_[exponent - lowest_];
}

Complex TruncatedSeries::evaluate(Complex x) const
{
    Complex acc{};
    for (std::size_t i = coeffs_.size(); i-- > 0;)
        acc = acc * x + coeffs_[i];
    return acc * std::pow(x, lowest_);
}

TruncatedSeries TruncatedSeries::truncated(int order) const
{
    const int t = std::min(order, truncation_order());
    if (t <= lowest_)
        return zero(t, t);
    return {lowest_, std::vector<Complex>(coeffs_.begin(), coeffs_.begin() + (t - lowest_))};
}

TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b)
{
    const int lo = std::min(a.lowest_, b.lowest_);
    const int t = std::min(a.truncation_order(), b.truncation_order());
    if (t <= lo)
        return TruncatedSeries::zero(t, t);
    std::vector<Complex> c(t - lo);
    for (int e = lo; e < t; ++e)
        c[e - lo] = a.coefficient(e) + b.coefficient(e);
    return {lo, std::move(c)};
}

TruncatedSeries operator*(Complex s, const TruncatedSeries& a)
{
    auto c = a.coeffs_;
    for (auto& x : c)
        x *= s;
    return {a.lowest_, std::move(c)};
}

TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b)
{
    return a + Complex(-1.0) * b;
}

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b)
{
    const int lo = checked_add(a.lowest_, b.lowest_);
    const int t = std::min(checked_add(a.truncation_order(), b.lowest_),
                           checked_add(b.truncation_order(), a.lowest_));
    if (t <= lo)
        return TruncatedSeries::zero(t, t);
    std::vector<Complex> c(t - lo);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (a.coeffs_[i] == Complex{})
            continue;
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
            const auto k = static_cast<int>(i + j);
            if (k >= t - lo)
                break;
            c[k] += a.coeffs_[i] * b.coeffs_[j];
        }
    }
    return {lo, std::move(c)};
}

TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b) { return a * b; }

Complex geometric_resum(Complex x, double abs_tol)
{
    const double r = std::abs(x);
    if (std::abs(r - 1.0) <= abs_tol)
        throw UnitCircleError("geometric ratio on the unit circle");
    if (r < 1.0)
        return 1.0 / (1.0 - x);
    const Complex inv = 1.0 / x;
    return -inv / (1.0 - inv);
}

} // namespace weierkit
