#include "weierkit/genus2.hpp"

#include <cmath>

#include "weierkit/combinatorics.hpp"
#include "weierkit/elliptic.hpp"

namespace weierkit {

namespace {

void check_torus(int a)
{
    if (a != 1 && a != 2)
        throw DomainError("torus index must be 1 or 2");
}

void check_sewing(const SewingData& s)
{
    if (!(s.tau1.imag() > 0.0) || !(s.tau2.imag() > 0.0))
        throw DomainError("sewing moduli need Im tau > 0");
    if (s.p < 1 || s.p > 8)
        throw DomainError("p must lie in 1..8");
    if (s.N <= 2 * s.p)
        throw DomainError("truncation N must exceed 2p");
    if (!is_finite(s.epsilon))
        throw DomainError("epsilon must be finite");
}

} // namespace

IndexMatrices build_index_matrices(int p, int N)
{
    if (p < 1 || N <= 2 * p)
        throw DomainError("index matrices need p >= 1 and N > 2p");
    IndexMatrices out{Matrix::Zero(N, N), Matrix::Zero(N, N), Matrix()};
    for (int m = 1; m <= N; ++m)
        for (int n = 1; n <= N; ++n) {
            if (m + n == 2 * p - 2)
                out.Gamma(m - 1, n - 1) = 1.0;
            if (m == n + 2 * p - 2)
                out.Delta(m - 1, n - 1) = 1.0;
        }
    out.Pi = out.Gamma * out.Gamma;
    return out;
}

Matrix build_Lambda(int a, const SewingData& s, const ToleranceConfig& cfg)
{
    check_torus(a);
    const Complex r = std::sqrt(s.epsilon);
    Matrix L = Matrix::Zero(s.N, s.N);
    for (int m = 1; m <= s.N; ++m)
        for (int n = 1; n <= s.N; ++n) {
            if ((m + n) % 2 != 0)
                continue;
            const Complex e = eisenstein_E(m + n, s.tau(a), cfg).value;
            L(m - 1, n - 1) = std::pow(r, m + n) * double(sign_power(n + 1)) * binomial(m + n - 1, n) * e;
        }
    return L;
}

Matrix build_A(int a, const SewingData& s, const ToleranceConfig& cfg)
{
    check_torus(a);
    const Complex r = std::sqrt(s.epsilon);
    Matrix A = Matrix::Zero(s.N, s.N);
    for (int k = 1; k <= s.N; ++k)
        for (int l = 1; l <= s.N; ++l) {
            if ((k + l) % 2 != 0)
                continue;
            const Complex e = eisenstein_E(k + l, s.tau(a), cfg).value;
            // (k+l-1)!/((k-1)!(l-1)!) = l C(k+l-1, l)
            const double comb = l * binomial(k + l - 1, l);
            A(k - 1, l - 1) = double(sign_power(k + 1)) * std::pow(r, k + l) / std::sqrt(double(k) * l) * comb * e;
        }
    return A;
}

Matrix build_S(int N)
{
    Matrix S = Matrix::Zero(N, N);
    for (int m = 1; m <= N; ++m)
        S(m - 1, m - 1) = std::sqrt(double(m));
    return S;
}

Genus2Context::Genus2Context(SewingData sewing, ToleranceConfig cfg) : sewing_(sewing), cfg_(cfg)
{
    cfg_.validate();
    check_sewing(sewing_);
    sqrt_eps_ = std::sqrt(sewing_.epsilon);
    index_ = build_index_matrices(sewing_.p, sewing_.N);
    for (int a = 1; a <= 2; ++a) {
        auto& e = eisenstein_[a - 1];
        for (int k = 0; k < 2 * sewing_.N + 2; ++k)
            e.push_back(eisenstein_E(k, sewing_.tau(a), cfg_).value);
        lambda_[a - 1] = build_Lambda(a, sewing_, cfg_);
        lambda_tilde_[a - 1] = lambda_[a - 1] * index_.Delta;
    }
    for (int a = 1; a <= 2; ++a) {
        const Matrix M = lambda_tilde_[other(a) - 1] * lambda_tilde_[a - 1];
        radius_[a - 1] = spectral_radius_estimate(M);
        if (radius_[a - 1] >= 0.9)
            throw ConvergenceError("sewing parameter too large: spectral radius " + std::to_string(radius_[a - 1]));
        resolvent_[a - 1] = inverse_one_minus(M);
    }
}

Complex Genus2Context::eps_pow_half(int k) const { return std::pow(sqrt_eps_, k); }

RowVector Genus2Context::R_row(int a, Complex x) const
{
    check_torus(a);
    RowVector r(sewing_.N);
    for (int m = 1; m <= sewing_.N; ++m)
        r(m - 1) = eps_pow_half(m) * weierstrass_P(m + 1, x, sewing_.tau(a), cfg_).value;
    return r;
}

RowVector Genus2Context::Q_row(int a, Complex x) const
{
    return R_row(a, x) * index_.Delta * resolvent_[a - 1];
}

RowVector Genus2Context::Q_row_neumann(int a, Complex x) const
{
    const Matrix M = lambda_tilde_[other(a) - 1] * lambda_tilde_[a - 1];
    RowVector term = R_row(a, x) * index_.Delta;
    RowVector sum = term;
    for (int k = 1; k < 5000; ++k) {
        term = term * M;
        sum += term;
        if (term.cwiseAbs().maxCoeff() <= 1e-18 * std::max(1.0, sum.cwiseAbs().maxCoeff()))
            return sum;
    }
    throw ConvergenceError("Neumann series for Q did not converge");
}

ColVector Genus2Context::P_column(int j, int a, Complex y) const
{
    check_torus(a);
    if (j < 0)
        throw DomainError("P column index j must be non-negative");
    ColVector c(sewing_.N);
    for (int m = 1; m <= sewing_.N; ++m) {
        Complex v = weierstrass_P(j + m, y, sewing_.tau(a), cfg_).value;
        if (j == 0)
            v -= eisenstein_[a - 1][m];
        c(m - 1) = eps_pow_half(m) * binomial(m + j - 1, j) * v;
    }
    return c;
}

Complex Genus2Context::weierstrass(int j, Genus2Branch branch, int a, Complex x, Complex y) const
{
    check_torus(a);
    if (j < 0)
        throw DomainError("j must be non-negative");
    const int p = sewing_.p;
    const int abar = other(a);
    const Complex tau = sewing_.tau(a);
    const RowVector Q = Q_row(a, x);
    const int tail = 2 * p - 3; // 0-based position of component 2p-2

    if (branch == Genus2Branch::same_torus) {
        const ColVector P = P_column(j, a, y);
        const Complex corr = (Q * lambda_tilde_[abar - 1] * P)(0, 0);
        if (j > 0)
            return weierstrass_P(j + 1, x - y, tau, cfg_).value + double(sign_power(j + 1)) * corr;
        Complex v = weierstrass_P(1, x - y, tau, cfg_).value - weierstrass_P(1, x, tau, cfg_).value - corr;
        if (p > 1)
            v -= (Q * lambda_[abar - 1])(0, tail);
        return v;
    }

    const ColVector P = P_column(j, abar, y);
    const Complex main = (Q * P)(0, 0);
    const double sign = sign_power(p + 1);
    if (j > 0)
        return sign * double(sign_power(j)) * main;
    Complex v = main;
    if (p > 1) {
        v += std::pow(sewing_.epsilon, p - 1) * weierstrass_P(2 * p - 1, x, tau, cfg_).value;
        v += (Q * lambda_tilde_[abar - 1] * lambda_[a - 1])(0, tail);
    }
    return sign * v;
}

Complex Genus2Context::weierstrass(int j, const Genus2Point& x, const Genus2Point& y) const
{
    check_torus(x.torus);
    check_torus(y.torus);
    const auto branch = x.torus == y.torus ? Genus2Branch::same_torus : Genus2Branch::cross_torus;
    return weierstrass(j, branch, x.torus, x.z, y.z);
}

F2Coefficients Genus2Context::f2(const Genus2Point& z) const
{
    const int b = z.torus;
    check_torus(b);
    const int bbar = other(b);
    const RowVector Q = Q_row(b, z.z);
    F2Coefficients out;
    Complex f[2];
    for (int a = 1; a <= 2; ++a) {
        Complex base;
        Complex component;
        if (a == b) {
            base = 1.0;
            component = (Q * lambda_tilde_[bbar - 1])(0, 0);
        } else {
            base = sewing_.literal_calF ? 1.0 : 0.0;
            component = double(sign_power(sewing_.p)) * Q(0, 0);
        }
        f[a - 1] = base + sqrt_eps_ * component;
    }
    out.f1 = f[0];
    out.f2 = f[1];
    out.f3 = (R_row(b, z.z) + Q * (lambda_tilde_[bbar - 1] * lambda_[b - 1] + lambda_[bbar - 1] * index_.Gamma)) *
             index_.Pi;
    return out;
}

Genus2Reduction genus2_reduce(const Family& family, const Genus2Context& ctx, std::span<const Genus2Point> points,
                              bool with_channels, const ModeLabel& base)
{
    if (points.empty())
        throw DomainError("genus two reduction needs the insertion point");
    const std::size_t n = points.size() - 1;
    std::vector<Complex> coords;
    for (std::size_t i = 0; i < n; ++i)
        coords.push_back(points[i].z);
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t k = i + 1; k < points.size(); ++k)
            if (points[i].torus == points[k].torus && points[i].z == points[k].z)
                throw DomainError("coincident points");
    const auto& cfg = ctx.config();
    const Genus2Point& x = points[n];
    const int bound = family.mode_bound().value_or(0);

    Genus2Reduction out;
    for (std::size_t i = 0; i < n; ++i) {
        int small = 0;
        double tail = 0.0;
        for (int j = 0; j < cfg.q_order; ++j) {
            const Action act = family.guarded_act({int(i) + 1, 1, j}, coords, base);
            const Complex z = act.weight * family.guarded_evaluate(coords, act.label);
            Complex term = 0.0;
            if (z != Complex(0.0))
                term = ctx.weierstrass(j, x, points[i]) * z;
            out.slot.value += term;
            ++out.terms_used;
            if (std::abs(term) < cfg.abs_tol) {
                tail += std::abs(term);
                if (++small >= 3 && j >= bound)
                    break;
            } else {
                small = 0;
                tail = 0.0;
            }
        }
        out.slot.truncation_error += tail;
    }

    if (with_channels) {
        const F2Coefficients f = ctx.f2(x);
        auto channel = [&](int l, int m) {
            const Action act = family.guarded_act({0, l, m}, coords, base);
            return act.weight * family.guarded_evaluate(coords, act.label);
        };
        Evaluation ch;
        ch.value = f.f1 * channel(1, 0) + f.f2 * channel(2, 0);
        for (int m = 1; m <= ctx.sewing().N; ++m)
            if (f.f3(m - 1) != Complex(0.0))
                ch.value += f.f3(m - 1) * channel(3, m);
        out.channel = ch;
    }
    return out;
}

} // namespace weierkit
