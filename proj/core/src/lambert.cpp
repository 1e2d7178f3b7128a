#include "weierkit/lambert.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include "weierkit/combinatorics.hpp"

namespace weierkit {

namespace {

constexpr int stirling_max = 14;

// Stirling numbers of the second kind S(n, k), 0 <= n, k <= stirling_max.
const std::array<std::array<double, stirling_max + 1>, stirling_max + 1>& stirling2()
{
    static const auto table = [] {
        std::array<std::array<double, stirling_max + 1>, stirling_max + 1> s{};
        s[0][0] = 1.0;
        for (int n = 1; n <= stirling_max; ++n)
            for (int k = 1; k <= n; ++k)
                s[n][k] = k * s[n - 1][k] + s[n - 1][k - 1];
        return s;
    }();
    return table;
}

// |x| <= 1, x != 1
Complex polylog_neg_inside(int i, Complex x)
{
    if (std::abs(x) <= 0.5) {
        Complex acc{};
        Complex xn = x;
        for (int n = 1; n < 4000; ++n) {
            const Complex term = std::pow(static_cast<double>(n), i) * xn;
            acc += term;
            if (std::abs(term) <= 1e-18 * std::abs(acc) && n > i)
                break;
            xn *= x;
        }
        return acc;
    }
    if (i + 1 <= stirling_max) {
        // Li_{-i}(x) = sum_k k! S(i+1, k+1) y^{k+1}, y = x / (1 - x)
        const auto& s = stirling2();
        const Complex y = x / (1.0 - x);
        Complex acc{};
        Complex yk = y;
        double kfact = 1.0;
        for (int k = 0; k <= i; ++k) {
            if (k > 0)
                kfact *= k;
            acc += kfact * s[i + 1][k + 1] * yk;
            yk *= y;
        }
        return acc;
    }
    // Li_{-i}(e^u) = i! sum_k (2 pi i k - u)^{-i-1}, absolutely convergent for i >= 1.
    const Complex u = std::log(x);
    const double fact = factorial(i);
    Complex acc = std::pow(-u, -(i + 1));
    for (int k = 1; k < 10000; ++k) {
        const Complex t = std::pow(two_pi_i * static_cast<double>(k) - u, -(i + 1)) +
                          std::pow(-two_pi_i * static_cast<double>(k) - u, -(i + 1));
        acc += t;
        if (std::abs(t) <= 1e-18 * std::abs(acc))
            break;
    }
    return fact * acc;
}

} // namespace

Complex polylog_neg(int i, Complex x)
{
    if (i < 0)
        throw DomainError("polylog_neg expects a non-negative order");
    if (std::abs(x - 1.0) == 0.0)
        throw PoleError("Li_{-i} has a pole at x = 1");
    if (std::abs(x) <= 1.0)
        return polylog_neg_inside(i, x);
    // Li_{-i}(x) = (-1)^{i+1} Li_{-i}(1/x) for i >= 1, Li_0(x) = -1 - Li_0(1/x)
    const Complex inv = 1.0 / x;
    if (i == 0)
        return -1.0 - polylog_neg_inside(0, inv);
    return static_cast<double>(sign_power(i + 1)) * polylog_neg_inside(i, inv);
}

namespace {

Complex power_term(double base, int power)
{
    if (power == 0)
        return 1.0;
    return std::pow(base, power);
}

// sum_{j >= n0} (j + s)^m x^j, closed form
Complex tail_polynomial_sum(int n0, double s, int m, Complex x)
{
    Complex from_one{};
    if (s == 0.0) {
        from_one = polylog_neg(m, x);
    } else {
        // x sum_{t >= 0} (t + c)^m x^t, c = 1 + s
        const double c = 1.0 + s;
        for (int i = 0; i <= m; ++i) {
            const Complex ti = polylog_neg(i, x) + (i == 0 ? 1.0 : 0.0);
            from_one += binomial(m, i) * std::pow(c, m - i) * ti;
        }
        from_one *= x;
    }
    Complex correction{};
    if (n0 <= 0) {
        for (int j = n0; j <= 0; ++j)
            correction += power_term(j + s, m) * std::pow(x, j);
    } else {
        for (int j = 1; j < n0; ++j)
            correction -= power_term(j + s, m) * std::pow(x, j);
    }
    return from_one + correction;
}

struct SideSum {
    Complex value{};
    double error = 0.0;
};

struct SideGeometry {
    double log_abs_x;
    double log_abs_q;
    double log_abs_a;
};

// Upper bound on |term_j| for the side sums below.
double term_bound(const LambertSum& sum, const SideGeometry& g, int j, int direction)
{
    const double log_r = g.log_abs_a + j * g.log_abs_q;
    const double small = std::exp(direction > 0 ? log_r : -log_r);
    const double poly = std::abs(power_term(j + sum.shift, sum.power));
    if (poly == 0.0)
        return 0.0;
    return std::exp(j * g.log_abs_x + std::log(small) + std::log(poly)) / (1.0 - small);
}

// direction +1: j = start, start+1, ... with |a q^j| < 1, term (j+s)^m x^j r/(1-r);
// direction -1: j = start, start-1, ... with |a q^j| > 1, term -(j+s)^m x^j r^{-1}/(1-r^{-1}).
SideSum side_sum(const LambertSum& sum, int start, int direction, Complex x, Complex q,
                 const SideGeometry& g, int max_shells)
{
    SideSum out;
    for (int shell = 0;; ++shell) {
        const int j = start + direction * shell;
        const double b = term_bound(sum, g, j, direction);
        const double b_next = term_bound(sum, g, j + direction, direction);
        // (j + s)^m can vanish at a single j; that is not a sign of convergence
        const bool decaying = b > 0.0 && b_next < b;
        const double rho = b > 0.0 ? b_next / b : 0.0;
        const double tail = decaying ? (rho < 1.0 ? b / (1.0 - rho) : b) : std::numeric_limits<double>::infinity();
        if (shell >= max_shells) {
            out.error = tail;
            break;
        }
        if (decaying && tail <= 1e-17 * std::max(1.0, std::abs(out.value))) {
            out.error = tail;
            break;
        }
        if (sum.excluded && *sum.excluded == j)
            continue;
        const Complex r = sum.a * std::pow(q, j);
        Complex factor;
        if (direction > 0) {
            factor = r / (1.0 - r);
        } else {
            const Complex inv = 1.0 / r;
            factor = -inv / (1.0 - inv);
        }
        out.value += power_term(j + sum.shift, sum.power) * std::pow(x, j) * factor;
    }
    return out;
}

Complex excluded_term(const LambertSum& sum, Complex w)
{
    if (!sum.excluded)
        return {};
    const int j = *sum.excluded;
    return power_term(j + sum.shift, sum.power) * nome(w * static_cast<double>(j));
}

} // namespace

Evaluation lambert_sum(const LambertSum& sum, Complex w, Complex tau, const ToleranceConfig& cfg)
{
    if (!(tau.imag() > 0.0))
        throw DomainError("tau must lie in the upper half-plane");
    if (sum.power < 0)
        throw DomainError("Lambert sum power must be non-negative");
    if (sum.a == Complex{})
        throw DomainError("Lambert sum parameter a must be non-zero");

    // reduce into |Im w| <= 3 Im tau / 4, then Re w into [-1/2, 1/2); undoing a shift
    // divides by a, so points already inside are left alone
    const double t = w.imag() / tau.imag();
    const int shifts = std::abs(t) <= 0.75 ? 0 : static_cast<int>(std::lround(t));
    Complex w0 = w - static_cast<double>(shifts) * tau;
    w0 -= std::floor(w0.real() + 0.5);

    const Complex x = nome(w0);
    if (std::abs(1.0 - x) <= cfg.abs_tol)
        throw PoleError("kernel evaluated at a lattice point");

    const Complex q = nome(tau);
    const double log_abs_q = -2.0 * std::numbers::pi * tau.imag();
    const double log_abs_a = sum.log_abs_a ? *sum.log_abs_a : std::log(std::abs(sum.a));

    // L(j) = log|a q^j| decreases in j; terms with |L(j)| <= boundary_tol sit on the
    // unit circle and are summed directly.
    constexpr double boundary_tol = 1e-12;
    const auto L = [&](int j) { return log_abs_a + j * log_abs_q; };
    const double j_star = -log_abs_a / log_abs_q;
    int upper_start = static_cast<int>(std::floor(j_star)) - 1;
    while (L(upper_start) >= -boundary_tol)
        ++upper_start;
    int lower_start = static_cast<int>(std::ceil(j_star)) + 1;
    while (L(lower_start) <= boundary_tol)
        --lower_start;

    Evaluation out;
    const int max_shells = std::max(cfg.q_order, 4 * sum.power + 8);
    const SideGeometry geometry{std::log(std::abs(x)), log_abs_q, log_abs_a};

    // closed form of sum_{j >= upper_start, j != excluded} (j + s)^m x^j
    out.value = tail_polynomial_sum(upper_start, sum.shift, sum.power, x);
    if (sum.excluded && *sum.excluded >= upper_start)
        out.value -= power_term(*sum.excluded + sum.shift, sum.power) * std::pow(x, *sum.excluded);

    const auto up = side_sum(sum, upper_start, +1, x, q, geometry, max_shells);
    const auto down = side_sum(sum, lower_start, -1, x, q, geometry, max_shells);
    out.value += up.value + down.value;
    out.truncation_error = up.error + down.error;

    for (int j = lower_start + 1; j < upper_start; ++j) {
        if (sum.excluded && *sum.excluded == j)
            continue;
        const Complex r = sum.a * std::pow(q, j);
        if (std::abs(1.0 - r) <= cfg.abs_tol)
            throw PoleError("Lambert denominator 1 - a q^j vanishes");
        out.value += power_term(j + sum.shift, sum.power) * std::pow(x, j) / (1.0 - r);
    }

    // undo the tau-shifts: S(v + tau) = a^{-1} (S(v) + E(v))
    Complex v = w0;
    if (shifts > 0) {
        for (int t = 0; t < shifts; ++t) {
            out.value = (out.value + excluded_term(sum, v)) / sum.a;
            out.truncation_error /= std::abs(sum.a);
            v += tau;
        }
    } else {
        for (int t = 0; t < -shifts; ++t) {
            v -= tau;
            out.value = sum.a * out.value - excluded_term(sum, v);
            out.truncation_error *= std::abs(sum.a);
        }
    }

    if (!is_finite(out.value))
        throw PoleError("Lambert sum diverged");
    return out;
}

} // namespace weierkit
