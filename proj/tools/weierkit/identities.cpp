#include "identities.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <future>
#include <memory>
#include <random>
#include <thread>

#include "weierkit/combinatorics.hpp"
#include "weierkit/elliptic.hpp"
#include "weierkit/genus0.hpp"
#include "weierkit/genus2.hpp"
#include "weierkit/genusg.hpp"
#include "weierkit/reduction.hpp"

namespace weierkit::identities {

namespace {

using Case = std::function<std::vector<CheckResult>()>;
using Fn = std::function<Complex(Complex)>;

CheckResult check(std::string name, double residual, double tol)
{
    return {std::move(name), residual <= tol, residual, tol};
}

std::string fmt(Complex z)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3g%+.3gi", z.real(), z.imag());
    return buf;
}

/// Central-difference d^m/dw^m: O(h^4) stencils with one Richardson step.
Complex central_derivative(const Fn& f, Complex w, int m)
{
    const auto stencil = [&](double h) -> Complex {
        switch (m) {
        case 1:
            return (-f(w + 2.0 * h) + 8.0 * f(w + h) - 8.0 * f(w - h) + f(w - 2.0 * h)) / (12.0 * h);
        case 2:
            return (-f(w + 2.0 * h) + 16.0 * f(w + h) - 30.0 * f(w) + 16.0 * f(w - h) - f(w - 2.0 * h)) /
                   (12.0 * h * h);
        case 3:
            return (-f(w + 3.0 * h) + 8.0 * f(w + 2.0 * h) - 13.0 * f(w + h) + 13.0 * f(w - h) -
                    8.0 * f(w - 2.0 * h) + f(w - 3.0 * h)) /
                   (8.0 * h * h * h);
        default:
            throw DomainError("central_derivative supports m <= 3");
        }
    };
    const double h = m == 1 ? 2e-3 : m == 2 ? 4e-3 : 8e-3;
    return (16.0 * stencil(h / 2.0) - stencil(h)) / 15.0;
}

/// Taylor coefficients c_0..c_{count-1} of g(x) on |x| = r from M samples.
std::vector<Complex> cauchy_coefficients(const std::function<Complex(Complex)>& g, double r, int count, int M = 64)
{
    std::vector<Complex> samples(static_cast<std::size_t>(M));
    std::vector<Complex> nodes(static_cast<std::size_t>(M));
    for (int t = 0; t < M; ++t) {
        nodes[t] = std::polar(r, 2.0 * std::numbers::pi * (t + 0.5) / M);
        samples[t] = g(nodes[t]);
    }
    std::vector<Complex> c(static_cast<std::size_t>(count));
    for (int j = 0; j < count; ++j) {
        Complex s = 0.0;
        for (int t = 0; t < M; ++t)
            s += samples[t] * std::pow(nodes[t], -j);
        c[j] = s / double(M);
    }
    return c;
}

std::vector<Complex> annulus_points(unsigned seed, Complex tau, int count)
{
    std::mt19937 gen(seed);
    std::uniform_real_distribution<double> re(0.0, 1.0), im(0.1, 0.9);
    std::vector<Complex> pts;
    for (int i = 0; i < count; ++i)
        pts.push_back(re(gen) + im(gen) * tau.imag() * Complex(0.0, 1.0));
    return pts;
}

double rel(Complex a, Complex b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

std::vector<Complex> taus_or(const SuiteOptions& o, std::vector<Complex> fallback)
{
    return o.taus.empty() ? fallback : o.taus;
}

// ---------------------------------------------------------------- genus one

std::vector<Case> derivative_descent(const SuiteOptions& o)
{
    std::vector<Case> cases;
    for (Complex tau : taus_or(o, {{0.0, 2.0}})) {
        const auto pts = annulus_points(o.seed, tau, 10);
        const auto cfg = o.cfg;
        const Complex z{0.31, 0.27};
        struct Kernel {
            std::string name;
            std::function<Complex(int, Complex)> eval;
        };
        const std::vector<Kernel> kernels = {
            {"P", [=](int m, Complex w) { return weierstrass_P(m, w, tau, cfg).value; }},
            {"P_lambda", [=](int m, Complex w) { return weierstrass_P_lambda(m, 0.35, w, tau, cfg).value; }},
            {"P_tilde", [=](int m, Complex w) { return weierstrass_P_tilde(m, w, z, tau, cfg).value; }},
        };
        for (const auto& k : kernels)
            cases.push_back([=] {
                double worst[4] = {0, 0, 0, 0};
                for (Complex w : pts) {
                    const Fn f1 = [&](Complex x) { return k.eval(1, x); };
                    for (int m = 1; m <= 3; ++m) {
                        const Complex d = central_derivative(f1, w, m) / std::pow(two_pi_i, m);
                        const Complex lhs = double(sign_power(m)) / factorial(m) * d;
                        const Complex rhs = k.eval(m + 1, w);
                        worst[m] = std::max(worst[m], std::abs(lhs - rhs) / std::abs(rhs));
                    }
                }
                std::vector<CheckResult> out;
                for (int m = 1; m <= 3; ++m)
                    out.push_back(check(k.name + " m=" + std::to_string(m) + " tau=" + fmt(tau), worst[m], 1e-6));
                return out;
            });
    }
    return cases;
}

std::vector<Case> laurent(const SuiteOptions& o)
{
    std::vector<Case> cases;
    for (Complex tau : taus_or(o, {{0.0, 2.0}, {0.5, 1.0}}))
        cases.push_back([=] {
            const auto cfg = o.cfg;
            // g(x) = P_1(w) - 1/x with x = 2 pi i w is analytic near 0
            const auto c = cauchy_coefficients(
                [&](Complex x) { return weierstrass_P(1, x / two_pi_i, tau, cfg).value - 1.0 / x; }, 0.6, 9);
            double worst = 0.0;
            for (int k = 1; k <= 8; ++k)
                worst = std::max(worst, std::abs(c[k - 1] + eisenstein_E(k, tau, cfg).value));
            return std::vector<CheckResult>{check("P_1 Laurent vs -E_k, k<=8, tau=" + fmt(tau), worst, 1e-7)};
        });
    return cases;
}

std::vector<Case> eisenstein_anomaly(const SuiteOptions& o)
{
    const Modular S{0, -1, 1, 0}, T{1, 1, 0, 1}, ST{0, -1, 1, 1};
    const std::vector<std::pair<std::string, Modular>> gammas = {{"S", S}, {"T", T}, {"ST", ST}};
    std::vector<Case> cases;
    for (Complex tau : taus_or(o, {{0.0, 2.0}, {0.5, 1.0}}))
        for (int k : {2, 4, 6})
            cases.push_back([=] {
                std::vector<CheckResult> out;
                for (const auto& [name, g] : gammas) {
                    const Complex predicted = eisenstein_transform(k, g, tau, o.cfg).value;
                    const Complex direct = eisenstein_E(k, g.act(tau), o.cfg).value;
                    out.push_back(check("E_" + std::to_string(k) + " " + name + " tau=" + fmt(tau),
                                        std::abs(predicted - direct), 1e-8));
                }
                return out;
            });
    return cases;
}

std::vector<Case> lambda_shift(const SuiteOptions& o)
{
    std::vector<Case> cases;
    for (Complex tau : taus_or(o, {{0.0, 2.0}}))
        for (int lambda : {0, 1, 2, -1, 3})
            cases.push_back([=] {
                double worst = 0.0;
                for (Complex w : annulus_points(o.seed + 1, tau, 10)) {
                    const Complex lhs = weierstrass_P_lambda(1, lambda, w, tau, o.cfg).value;
                    const Complex rhs =
                        std::exp(-two_pi_i * double(lambda) * w) * (weierstrass_P(1, w, tau, o.cfg).value + 0.5);
                    worst = std::max(worst, rel(lhs, rhs));
                }
                return std::vector<CheckResult>{
                    check("P_{1,lambda} relation lambda=" + std::to_string(lambda) + " tau=" + fmt(tau), worst, 1e-8)};
            });
    cases.push_back([=] {
        double worst = 0.0;
        for (double lambda : {0.0, 0.25, 0.5, 0.9, 1.0, 2.0, -1.5})
            for (Complex tau : taus_or(o, {{0.0, 2.0}}))
                worst = std::max(worst, std::abs(eisenstein_E_lambda(1, lambda, tau, o.cfg).value + lambda));
        return std::vector<CheckResult>{check("E_{1,lambda} = -lambda", worst, 1e-12)};
    });
    return cases;
}

std::vector<Case> quasi_jacobi(const SuiteOptions& o)
{
    std::vector<Case> cases;
    for (Complex tau : taus_or(o, {{0.0, 2.0}}))
        for (Complex z : {Complex(0.31, 0.27), Complex(0.62, -0.4), Complex(0.5, 0.1)})
            cases.push_back([=] {
                const auto c = cauchy_coefficients(
                    [&](Complex x) { return weierstrass_P_tilde(1, x / two_pi_i, z, tau, o.cfg).value - 1.0 / x; },
                    0.5, 6);
                double worst = 0.0;
                for (int k = 1; k <= 6; ++k)
                    worst = std::max(worst, std::abs(c[k - 1] + eisenstein_E_tilde(k, z, tau, o.cfg).value));
                const double e0 = std::abs(eisenstein_E_tilde(0, z, tau, o.cfg).value + 1.0);
                return std::vector<CheckResult>{
                    check("P~_1 expansion vs -E~_k, k<=6, z=" + fmt(z) + " tau=" + fmt(tau), worst, 1e-7),
                    check("E~_0 = -1, z=" + fmt(z), e0, 0.0)};
            });
    return cases;
}

std::vector<Case> twist_degeneration(const SuiteOptions& o)
{
    std::vector<Case> cases;
    for (Complex tau : taus_or(o, {{0.0, 2.0}, {0.5, 1.0}}))
        cases.push_back([=] {
            std::vector<CheckResult> out;
            const auto pts = annulus_points(o.seed + 2, tau, 6);
            for (int k = 1; k <= 4; ++k) {
                double worst = 0.0;
                for (Complex w : pts)
                    worst = std::max(worst, rel(twisted_P(k, TwistData{}, w, tau, o.cfg).value,
                                                weierstrass_P_zhu(k, w, tau, o.cfg).value));
                out.push_back(check("P_" + std::to_string(k) + "[1,1] = P_" + std::to_string(k) + " tau=" + fmt(tau),
                                    worst, 1e-10));
            }
            return out;
        });
    return cases;
}

// ---------------------------------------------------------------- genus zero

std::vector<Case> genus0(const SuiteOptions& o)
{
    std::vector<Case> cases;
    for (int n = 0; n <= 4; ++n)
        cases.push_back([=] {
            std::vector<CheckResult> out;
            std::mt19937 gen(o.seed + n);
            std::uniform_real_distribution<double> u(-1.0, 1.0);
            for (int m = 0; m <= 4; ++m) {
                const auto series = f_rational_expansion({n, m}, 30);
                double worst_num = 0.0;
                for (int t = 0; t < 5; ++t) {
                    const Complex z{u(gen) + 1.5, u(gen)};
                    const Complex w = 0.1 * z * std::polar(1.0, 3.0 * u(gen));
                    worst_num = std::max(worst_num, rel(series.evaluate(z, w), f_rational({n, m}, z, w)));
                }
                bool exact = true;
                for (int e = series.lowest; e < 30; ++e) {
                    // C(n+i, m) z^{-n-i-1} w^{n+i-m} with e = n + i - m
                    std::map<int, Rational> expected;
                    const int i = e + m - n;
                    if (i >= 0) {
                        const BigInt b = exact_binomial(n + i, m);
                        if (b != 0)
                            expected[-n - i - 1] = Rational(b);
                    }
                    if (series.coefficient(e) != expected)
                        exact = false;
                }
                const std::string tag = "(n,m)=(" + std::to_string(n) + "," + std::to_string(m) + ")";
                out.push_back(check("resummed expansion " + tag, worst_num, 1e-10));
                out.push_back(check("exact coefficients to order 30 " + tag, exact ? 0.0 : 1.0, 0.0));
            }
            return out;
        });
    return cases;
}

// ---------------------------------------------------------------- genus two

SewingData sewing_at(Complex eps, int p, int N)
{
    SewingData s;
    s.tau1 = {0.1, 1.0};
    s.tau2 = {-0.2, 1.3};
    s.epsilon = eps;
    s.p = p;
    s.N = N;
    return s;
}

std::vector<Case> genus2_conjugation(const SuiteOptions& o)
{
    std::vector<Case> cases;
    for (Complex eps : {Complex(0.01, 0.0), Complex(0.006, 0.008), Complex(-0.01, 0.0)})
        cases.push_back([=] {
            std::vector<CheckResult> out;
            const SewingData s = sewing_at(eps, 1, 20);
            const Matrix S = build_S(20);
            for (int a = 1; a <= 2; ++a) {
                const Matrix diff = build_Lambda(a, s, o.cfg) - S * build_A(a, s, o.cfg) * S.inverse();
                out.push_back(check("Lambda_" + std::to_string(a) + " = S A S^-1, eps=" + fmt(eps),
                                    diff.cwiseAbs().maxCoeff(), 1e-12));
            }
            return out;
        });
    return cases;
}

std::vector<Case> genus2_inversion(const SuiteOptions& o)
{
    std::vector<Case> cases;
    for (int p : {1, 2, 3})
        cases.push_back([=] {
            std::vector<CheckResult> out;
            const Complex eps = std::polar(0.01, 0.7);
            const Genus2Context c16(sewing_at(eps, p, 16), o.cfg);
            const Genus2Context c20(sewing_at(eps, p, 20), o.cfg);
            double worst_rel = 0.0, worst_drift = 0.0;
            for (Complex x : {Complex(0.13, 0.21), Complex(-0.3, 0.55), Complex(0.41, 0.8)})
                for (int a = 1; a <= 2; ++a) {
                    const RowVector d = c16.Q_row(a, x);
                    const RowVector n = c16.Q_row_neumann(a, x);
                    worst_rel = std::max(worst_rel, (d - n).norm() / std::max(d.norm(), 1e-300));
                    const Complex y{-0.27, 0.4};
                    for (auto branch : {Genus2Branch::same_torus, Genus2Branch::cross_torus})
                        for (int j = 0; j <= 2; ++j)
                            worst_drift = std::max(worst_drift, std::abs(c16.weierstrass(j, branch, a, x, y) -
                                                                         c20.weierstrass(j, branch, a, x, y)));
                }
            out.push_back(check("Q direct vs Neumann p=" + std::to_string(p), worst_rel, 1e-10));
            out.push_back(check("N 16 -> 20 drift p=" + std::to_string(p), worst_drift, 1e-8));
            return out;
        });
    return cases;
}

std::vector<Case> genus2_degeneration(const SuiteOptions& o)
{
    std::vector<Case> cases;
    for (int p : {1, 2, 3, 4})
        cases.push_back([=] {
            const Genus2Context ctx(sewing_at(1e-20, p, 16), o.cfg);
            double worst = 0.0;
            for (int a = 1; a <= 2; ++a)
                for (auto [x, y] : {std::pair{Complex(0.13, 0.21), Complex(-0.27, 0.4)},
                                    std::pair{Complex(0.6, 0.5), Complex(0.2, 0.3)}}) {
                    const Complex tau = ctx.sewing().tau(a);
                    const Complex limit =
                        weierstrass_P(1, x - y, tau, o.cfg).value - weierstrass_P(1, x, tau, o.cfg).value;
                    worst = std::max(worst,
                                     std::abs(ctx.weierstrass(0, Genus2Branch::same_torus, a, x, y) - limit));
                }
            return std::vector<CheckResult>{check("eps -> 0 limit of P_1(p) p=" + std::to_string(p), worst, 1e-8)};
        });
    return cases;
}

// ---------------------------------------------------------------- genus g

SchottkyData schottky(int p, std::vector<Complex> rho, int N)
{
    SchottkyData d;
    d.g = 2;
    d.w_minus = {{-1.0, 0.0}, {0.0, -1.5}};
    d.w_plus = {{1.2, 0.1}, {0.2, 1.4}};
    d.rho = std::move(rho);
    d.p = p;
    d.N = N;
    d.f.resize(static_cast<std::size_t>(2 * p - 1));
    d.f[0].terms = {{-1, {0.3, 0.0}}, {1, {0.05, -0.02}}};
    if (p > 1)
        d.f[2].terms = {{0, {0.1, 0.2}}};
    return d;
}

std::vector<Case> genusg_kernel(const SuiteOptions& o)
{
    std::vector<Case> cases;
    for (int p : {1, 2, 3})
        cases.push_back([=] {
            std::vector<CheckResult> out;
            const std::string tag = " p=" + std::to_string(p);
            const Complex x{0.3, 0.2};
            const SchottkyContext zero(schottky(p, {0.0, 0.0}, 12), o.cfg);
            bool exact = true;
            for (Complex y : {Complex(-0.4, 0.5), Complex(0.7, -0.3)})
                exact = exact && zero.psi(x, y).value == psi0(p, x, y, zero.data().f);
            out.push_back(check("psi_p = psi_p^(0) at rho = 0" + tag, exact ? 0.0 : 1.0, 0.0));

            const SchottkyContext ctx(schottky(p, {{0.01, 0.0}, {0.005, 0.005}}, 12), o.cfg);
            // (x - y) psi(x, y) = 1 + c1 h + c2 h^2 + ..; quadratic extrapolation to h = 0
            const double hs[3] = {1e-3, 1e-4, 1e-5};
            Complex v[3];
            for (int i = 0; i < 3; ++i) {
                const Complex y = x + hs[i];
                v[i] = (x - y) * ctx.psi(x, y).value;
            }
            Complex extrapolated = 0.0;
            for (int i = 0; i < 3; ++i) {
                double lag = 1.0;
                for (int k = 0; k < 3; ++k)
                    if (k != i)
                        lag *= (0.0 - hs[k]) / (hs[i] - hs[k]);
                extrapolated += lag * v[i];
            }
            out.push_back(check("(x - y) psi_p -> 1" + tag, std::abs(extrapolated - 1.0), 1e-6));

            const NeumannInverse inv = neumann_inverse(ctx.R_tilde());
            out.push_back(check("Neumann residual" + tag, inv.residual, 1e-10));
            out.push_back(check("solve vs series" + tag, (inv.solve - inv.series).cwiseAbs().maxCoeff(), 1e-10));
            return out;
        });
    return cases;
}

// ---------------------------------------------------------------- reduction engine

std::shared_ptr<TableFamily> random_table(Kind kind, unsigned seed, int slots, int channels, int modes)
{
    std::mt19937 gen(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<OperatorIndex> ops;
    for (int k = 0; k <= slots; ++k)
        for (int l = 1; l <= channels; ++l)
            for (int m = 0; m < modes; ++m)
                ops.push_back({k, l, m});
    std::vector<TableFamily::Entry> entries;
    entries.push_back({{}, std::nullopt, {u(gen), u(gen)}});
    for (const auto& a : ops) {
        entries.push_back({{a}, std::nullopt, {u(gen), u(gen)}});
        for (const auto& b : ops)
            entries.push_back({{a, b}, std::nullopt, {u(gen), u(gen)}});
    }
    return std::make_shared<TableFamily>(kind, 4, std::move(entries));
}

struct EngineCase {
    std::string name;
    std::shared_ptr<const CoefficientSystem> system;
    std::vector<Complex> points; ///< z_1..z_3
};

std::vector<EngineCase> engine_cases(const ToleranceConfig& cfg)
{
    const Complex tau{0.0, 2.0};
    std::vector<EngineCase> out;
    out.push_back({"rational", std::make_shared<RationalSystem>(cfg), {{0.3, 0.1}, {1.1, -0.4}, {-0.7, 0.9}}});
    out.push_back({"elliptic", std::make_shared<EllipticSystem>(tau, cfg), {{0.1, 0.3}, {0.45, 0.7}, {0.8, 1.1}}});
    out.push_back({"twisted", std::make_shared<TwistedSystem>(tau, TwistData::from_angles(0.2, 0.3), cfg),
                   {{0.1, 0.3}, {0.45, 0.7}, {0.8, 1.1}}});
    out.push_back({"jacobi", std::make_shared<JacobiSystem>(tau, Complex(0.3, 0.2), cfg),
                   {{0.4, 1.0}, {-0.3, 2.2}, {0.2, 3.5}}});
    return out;
}

std::vector<Case> reduction_structure(const SuiteOptions& o)
{
    std::vector<Case> cases;
    for (const auto& ec : engine_cases(o.cfg))
        cases.push_back([=] {
            std::vector<CheckResult> out;
            const Kind kind = ec.system->kind();
            const auto F = random_table(kind, o.seed + 11, 2, 1, 4);
            const auto G = random_table(kind, o.seed + 12, 2, 1, 4);
            const Complex alpha{0.7, -0.2}, beta{-1.3, 0.4};
            const LinearCombinationFamily H({{alpha, F}, {beta, G}});
            const auto& sys = *ec.system;
            const std::span<const Complex> z2(ec.points.data(), 2);
            const std::span<const Complex> z3(ec.points.data(), 3);

            const Complex d = apply_delta(1, H, sys, z2).value;
            const Complex dF = apply_delta(1, *F, sys, z2).value;
            const Complex dG = apply_delta(1, *G, sys, z2).value;
            double lin = rel(d, alpha * dF + beta * dG);
            const auto nH = reduce_to_nullpoint(H, sys, z2).report.value;
            const auto nF = reduce_to_nullpoint(*F, sys, z2).report.value;
            const auto nG = reduce_to_nullpoint(*G, sys, z2).report.value;
            lin = std::max(lin, rel(nH, alpha * nF + beta * nG));
            out.push_back(check(ec.name + " linearity", lin, 1e-12));

            const auto trace = reduce_to_nullpoint(*F, sys, z2);
            Complex from_trace = 0.0;
            for (const auto& [word, c] : trace.trace)
                from_trace += c * F->evaluate({}, word);
            const DeltaImageFamily image(F, ec.system);
            const Complex composed = apply_delta(1, image, sys, z2).value;
            const double two_path = std::max(rel(trace.report.value, composed), rel(from_trace, composed));
            out.push_back(check(ec.name + " two-path composition", two_path, 1e-12));

            const double base = check_chain_condition(1, *F, sys, z3);
            const PerturbedSystem perturbed(ec.system, {1, 1, 0}, 1e-3);
            const double moved = std::abs(check_chain_condition(1, *F, perturbed, z3) - base);
            out.push_back({ec.name + " chain detector response", moved >= 1e-4, moved, 1e-4});
            return out;
        });
    return cases;
}

std::vector<Case> build(const std::string& name, const SuiteOptions& o)
{
    if (name == "derivative-descent")
        return derivative_descent(o);
    if (name == "laurent")
        return laurent(o);
    if (name == "eisenstein-anomaly")
        return eisenstein_anomaly(o);
    if (name == "lambda-shift")
        return lambda_shift(o);
    if (name == "quasi-jacobi")
        return quasi_jacobi(o);
    if (name == "twist-degeneration")
        return twist_degeneration(o);
    if (name == "genus0")
        return genus0(o);
    if (name == "genus2-conjugation")
        return genus2_conjugation(o);
    if (name == "genus2-inversion")
        return genus2_inversion(o);
    if (name == "genus2-degeneration")
        return genus2_degeneration(o);
    if (name == "genusg-kernel")
        return genusg_kernel(o);
    if (name == "reduction-structure")
        return reduction_structure(o);
    throw DomainError("unknown suite '" + name + "'");
}

} // namespace

bool SuiteResult::passed() const
{
    return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

double SuiteResult::worst_residual() const
{
    double w = 0.0;
    for (const auto& c : checks)
        w = std::max(w, c.residual);
    return w;
}

const std::vector<std::string>& suite_names()
{
    static const std::vector<std::string> names = {
        "derivative-descent", "laurent",           "eisenstein-anomaly", "lambda-shift",
        "quasi-jacobi",       "twist-degeneration", "genus0",             "genus2-conjugation",
        "genus2-inversion",   "genus2-degeneration", "genusg-kernel",      "reduction-structure"};
    return names;
}

SuiteResult run_suite(const std::string& name, const SuiteOptions& options)
{
    const auto cases = build(name, options);
    std::vector<std::vector<CheckResult>> results(cases.size());
    const unsigned workers =
        std::max(1u, std::min<unsigned>(options.threads ? options.threads : std::thread::hardware_concurrency(),
                                        static_cast<unsigned>(cases.size())));
    std::atomic<std::size_t> next{0};
    std::vector<std::future<void>> pool;
    for (unsigned t = 0; t < workers; ++t)
        pool.push_back(std::async(std::launch::async, [&] {
            for (std::size_t i = next++; i < cases.size(); i = next++)
                results[i] = cases[i]();
        }));
    for (auto& f : pool)
        f.get();
    SuiteResult out{name, {}};
    for (auto& r : results)
        out.checks.insert(out.checks.end(), r.begin(), r.end());
    return out;
}

} // namespace weierkit::identities
