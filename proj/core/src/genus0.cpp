#include "weierkit/genus0.hpp"

#include <memory>
#include <mutex>
#include <sstream>
#include <tuple>

#include "weierkit/errors.hpp"

namespace weierkit {

namespace {

using TermKey = std::tuple<int, int, int>;

std::vector<RationalTerm> collect(const std::map<TermKey, Rational>& acc)
{
    std::vector<RationalTerm> out;
    for (const auto& [key, c] : acc) {
        if (c == 0)
            continue;
        out.push_back({c, std::get<0>(key), std::get<1>(key), std::get<2>(key)});
    }
    return out;
}

std::vector<RationalTerm> differentiate_w(const std::vector<RationalTerm>& terms)
{
    std::map<TermKey, Rational> acc;
    for (const auto& t : terms) {
        if (t.w_power != 0)
            acc[{t.z_power, t.w_power - 1, t.pole_order}] += t.coeff * t.w_power;
        // d/dw (z - w)^{-c} = c (z - w)^{-c-1}
        if (t.pole_order != 0)
            acc[{t.z_power, t.w_power, t.pole_order + 1}] += t.coeff * t.pole_order;
    }
    return collect(acc);
}

Complex ipow(Complex x, int e)
{
    if (e == 0)
        return 1.0;
    Complex r = 1.0;
    Complex b = e > 0 ? x : 1.0 / x;
    for (int k = std::abs(e); k > 0; k >>= 1) {
        if (k & 1)
            r *= b;
        b *= b;
    }
    return r;
}

} // namespace

RationalKernel::RationalKernel(RationalKernelSpec sum) : spec_(sum)
{
    if (sum.n < 0 || sum.m < 0)
        throw DomainError("rational kernel indices must be non-negative");
    terms_ = {{Rational(1), -sum.n, sum.n, 1}};
    Rational fact = 1;
    for (int i = 1; i <= sum.m; ++i) {
        terms_ = differentiate_w(terms_);
        fact *= i;
    }
    for (auto& t : terms_)
        t.coeff /= fact;
}

const RationalKernel& RationalKernel::get(RationalKernelSpec sum)
{
    static std::mutex mutex;
    static std::map<std::pair<int, int>, std::unique_ptr<RationalKernel>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[{sum.n, sum.m}];
    if (!slot)
        slot = std::make_unique<RationalKernel>(sum);
    return *slot;
}

Complex RationalKernel::evaluate(Complex z, Complex w) const
{
    if (z == w)
        throw PoleError("f_rational: z = w");
    if (spec_.n > 0 && z == Complex(0.0))
        throw PoleError("f_rational: z = 0");
    const Complex d = z - w;
    Complex sum = 0.0;
    for (const auto& t : terms_)
        sum += to_double(t.coeff) * ipow(z, t.z_power) * ipow(w, t.w_power) * ipow(d, -t.pole_order);
    return sum;
}

std::vector<RationalTerm> RationalKernel::w_derivative() const { return differentiate_w(terms_); }

std::string RationalKernel::to_string() const
{
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms_) {
        if (!first)
            os << " + ";
        first = false;
        os << '(' << weierkit::to_string(t.coeff) << ")*z^" << t.z_power << "*w^" << t.w_power << "/(z-w)^"
           << t.pole_order;
    }
    return first ? "0" : os.str();
}

Complex f_rational(RationalKernelSpec sum, Complex z, Complex w)
{
    return RationalKernel::get(sum).evaluate(z, w);
}

const std::map<int, Rational>& RationalLaurentSeries::coefficient(int e) const
{
    static const std::map<int, Rational> empty;
    if (e >= order)
        throw DomainError("coefficient beyond truncation order");
    if (e < lowest)
        return empty;
    return coefficients[static_cast<std::size_t>(e - lowest)];
}

TruncatedSeries RationalLaurentSeries::at(Complex z) const
{
    std::vector<Complex> c;
    c.reserve(coefficients.size());
    for (const auto& poly : coefficients) {
        Complex v = 0.0;
        for (const auto& [zp, r] : poly)
            v += to_double(r) * ipow(z, zp);
        c.push_back(v);
    }
    return TruncatedSeries(lowest, std::move(c));
}

Complex RationalLaurentSeries::evaluate(Complex z, Complex w) const { return at(z).evaluate(w); }

RationalLaurentSeries f_rational_expansion(RationalKernelSpec sum, int order)
{
    if (order <= 0)
        throw DomainError("expansion order must be positive");
    const auto& kernel = RationalKernel::get(sum);
    int lowest = order;
    for (const auto& t : kernel.terms())
        lowest = std::min(lowest, t.w_power);
    lowest = std::min(lowest, 0);

    RationalLaurentSeries out;
    out.lowest = lowest;
    out.order = order;
    out.coefficients.resize(static_cast<std::size_t>(order - lowest));
    // (z - w)^{-c} = z^{-c} sum_i C(c-1+i, i) (w/z)^i
    for (const auto& t : kernel.terms()) {
        for (int i = 0; t.w_power + i < order; ++i) {
            const Rational c = t.coeff * Rational(exact_binomial(t.pole_order - 1 + i, i));
            auto& slot = out.coefficients[static_cast<std::size_t>(t.w_power + i - lowest)];
            const int zp = t.z_power - t.pole_order - i;
            slot[zp] += c;
            if (slot[zp] == 0)
                slot.erase(zp);
        }
    }
    return out;
}

} // namespace weierkit
