#include "weierkit/genusg.hpp"

#include <cmath>

#include "weierkit/combinatorics.hpp"

namespace weierkit {

namespace {

Complex ipow(Complex x, int e)
{
    return e >= 0 ? std::pow(x, e) : 1.0 / std::pow(x, -e);
}

void check_f(int p, const std::vector<LaurentPolynomial>& f)
{
    if (p < 1)
        throw DomainError("p must be positive");
    if (f.size() > static_cast<std::size_t>(2 * p - 1))
        throw DomainError("at most 2p - 1 Laurent series f_0 .. f_{2p-2}");
}

} // namespace

Complex LaurentPolynomial::evaluate(Complex x) const
{
    Complex s = 0.0;
    for (const auto& [e, c] : terms)
        s += c * ipow(x, e);
    return s;
}

Complex LaurentPolynomial::derivative(int k, Complex x) const
{
    Complex s = 0.0;
    for (const auto& [e, c] : terms) {
        const double b = binomial_real(e, k);
        if (b != 0.0)
            s += c * b * ipow(x, e - k);
    }
    return s;
}

int FormValue::weight(const std::string& variable) const
{
    for (const auto& [v, w] : weights)
        if (v == variable)
            return w;
    return 0;
}

FormValue operator*(const FormValue& a, const FormValue& b)
{
    FormValue out{a.value * b.value, a.weights};
    for (const auto& [v, w] : b.weights) {
        bool merged = false;
        for (auto& [u, x] : out.weights)
            if (u == v) {
                x += w;
                merged = true;
            }
        if (!merged)
            out.weights.emplace_back(v, w);
    }
    return out;
}

Complex SchottkyData::w(int a) const
{
    if (a == 0 || std::abs(a) > g)
        throw DomainError("Schottky index out of range");
    return a > 0 ? w_plus[a - 1] : w_minus[-a - 1];
}

Complex SchottkyData::rho_of(int a) const
{
    if (a == 0 || std::abs(a) > g)
        throw DomainError("Schottky index out of range");
    return rho[std::abs(a) - 1];
}

Complex psi0(int p, Complex x, Complex y, const std::vector<LaurentPolynomial>& f)
{
    return psi0_derivative(0, 0, p, x, y, f);
}

Complex psi0_derivative(int i, int j, int p, Complex x, Complex y, const std::vector<LaurentPolynomial>& f)
{
    check_f(p, f);
    if (i < 0 || j < 0)
        throw DomainError("derivative orders must be non-negative");
    if (x == y)
        throw PoleError("psi_p^(0) at x = y");
    Complex v = double(sign_power(i)) * binomial(i + j, i) * ipow(x - y, -i - j - 1);
    for (std::size_t l = 0; l < f.size(); ++l) {
        const double b = binomial(int(l), j);
        if (b != 0.0)
            v += f[l].derivative(i, x) * b * ipow(y, int(l) - j);
    }
    return v;
}

Complex E_moment(int m, int n, Complex y, const std::vector<LaurentPolynomial>& f, int p)
{
    check_f(p, f);
    Complex v = 0.0;
    for (std::size_t l = 0; l < f.size(); ++l) {
        const double b = binomial(int(l), n);
        if (b != 0.0)
            v += f[l].derivative(m, y) * b * ipow(y, int(l) - n);
    }
    return v;
}

NeumannInverse neumann_inverse(const Matrix& R_tilde)
{
    const double radius = spectral_radius_estimate(R_tilde);
    if (radius >= 0.9)
        throw ConvergenceError("spectral radius of R~ is " + std::to_string(radius));
    NeumannInverse out;
    out.solve = inverse_one_minus(R_tilde);
    out.series = neumann_series(R_tilde);
    const Matrix I = Matrix::Identity(R_tilde.rows(), R_tilde.cols());
    out.residual = ((I - R_tilde) * out.solve - I).cwiseAbs().rowwise().sum().maxCoeff();
    return out;
}

const std::vector<Complex>& ChiTheta::chi_of(int a, int g) const
{
    if (a == 0 || std::abs(a) > g)
        throw DomainError("Schottky index out of range");
    return chi[static_cast<std::size_t>(a < 0 ? a + g : a + g - 1)];
}

SchottkyContext::SchottkyContext(SchottkyData data, ToleranceConfig cfg) : data_(std::move(data)), cfg_(cfg)
{
    cfg_.validate();
    const int g = data_.g;
    if (g < 1)
        throw DomainError("genus must be at least 1");
    if (int(data_.w_minus.size()) != g || int(data_.w_plus.size()) != g || int(data_.rho.size()) != g)
        throw DomainError("need g values each of w_{-a}, w_a and rho_a");
    check_f(data_.p, data_.f);
    if (data_.N < 2 * data_.p)
        throw DomainError("truncation N must be at least 2p");
    std::vector<Complex> all(data_.w_minus);
    all.insert(all.end(), data_.w_plus.begin(), data_.w_plus.end());
    for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t k = i + 1; k < all.size(); ++k)
            if (all[i] == all[k])
                throw DomainError("Schottky points must be distinct");
    for (const auto& r : data_.rho)
        if (!is_finite(r))
            throw DomainError("rho must be finite");
    for (const auto& r : data_.rho)
        sqrt_rho_.push_back(std::sqrt(r));

    const int N = data_.N;
    const int shift = 2 * data_.p - 1;
    const int size = 2 * g * N;
    R_ = Matrix::Zero(size, size);
    for (int a = -g; a <= g; ++a)
        for (int b = -g; b <= g; ++b) {
            if (a == 0 || b == 0)
                continue;
            for (int m = 0; m < N; ++m)
                for (int n = 0; n < N; ++n)
                    R_(flat(a, m), flat(b, n)) = R_entry(a, m, b, n);
        }
    R_tilde_ = Matrix::Zero(size, size);
    for (int b = -g; b <= g; ++b) {
        if (b == 0)
            continue;
        for (int n = 0; n + shift < N; ++n)
            R_tilde_.col(flat(b, n)) = R_.col(flat(b, n + shift));
    }
    radius_ = spectral_radius_estimate(R_tilde_);
    if (radius_ >= 0.9)
        throw ConvergenceError("Schottky parameters too large: spectral radius " + std::to_string(radius_));
    inverse_ = inverse_one_minus(R_tilde_);
    const Matrix I = Matrix::Identity(size, size);
    residual_ = ((I - R_tilde_) * inverse_ - I).cwiseAbs().rowwise().sum().maxCoeff();
}

int SchottkyContext::block(int a) const { return 2 * (std::abs(a) - 1) + (a > 0 ? 1 : 0); }

int SchottkyContext::flat(int a, int m) const { return block(a) * data_.N + m; }

Complex SchottkyContext::rho_half(int a, int k) const { return std::pow(sqrt_rho_[std::abs(a) - 1], k); }

Complex SchottkyContext::R_entry(int a, int m, int b, int n) const
{
    const double sign = sign_power(data_.p);
    if (a != -b)
        return sign * rho_half(a, m + 1) * rho_half(b, n) *
               psi0_derivative(m, n, data_.p, data_.w(-a), data_.w(b), data_.f);
    return sign * rho_half(a, m + n + 1) * E_moment(m, n, data_.w(-a), data_.f, data_.p);
}

RowVector SchottkyContext::p_row(Complex x) const
{
    const int g = data_.g;
    RowVector r = RowVector::Zero(2 * g * data_.N);
    for (int a = -g; a <= g; ++a) {
        if (a == 0)
            continue;
        for (int m = 0; m < data_.N; ++m)
            r(flat(a, m)) = rho_half(a, m) * psi0_derivative(0, m, data_.p, x, data_.w(a), data_.f);
    }
    return r;
}

RowVector SchottkyContext::p_tilde_row(Complex x) const
{
    const RowVector p = p_row(x);
    const int shift = 2 * data_.p - 1;
    RowVector r = RowVector::Zero(p.size());
    for (int a = -data_.g; a <= data_.g; ++a) {
        if (a == 0)
            continue;
        for (int n = 0; n + shift < data_.N; ++n)
            r(flat(a, n)) = p(flat(a, n + shift));
    }
    return r;
}

ColVector SchottkyContext::q_col(Complex y, int j) const
{
    const int g = data_.g;
    const double sign = sign_power(data_.p);
    ColVector c = ColVector::Zero(2 * g * data_.N);
    for (int a = -g; a <= g; ++a) {
        if (a == 0)
            continue;
        for (int m = 0; m < data_.N; ++m)
            c(flat(a, m)) = sign * rho_half(a, m + 1) * psi0_derivative(m, j, data_.p, data_.w(-a), y, data_.f);
    }
    return c;
}

KernelVectors SchottkyContext::kernel_vectors(Complex x, Complex y) const
{
    return {p_row(x), q_col(y), p_tilde_row(x)};
}

FormValue SchottkyContext::psi(Complex x, Complex y) const
{
    const Complex v = psi0(data_.p, x, y, data_.f) + (p_tilde_row(x) * inverse_ * q_col(y))(0, 0);
    return {v, {{"x", data_.p}, {"y", 1 - data_.p}}};
}

Complex SchottkyContext::psi_derivative(int j, Complex x, Complex y) const
{
    return psi0_derivative(0, j, data_.p, x, y, data_.f) + (p_tilde_row(x) * inverse_ * q_col(y, j))(0, 0);
}

ChiTheta SchottkyContext::chi_theta(Complex x) const
{
    const int g = data_.g;
    const int p = data_.p;
    const int L = 2 * p - 1;
    const RowVector left = p_tilde_row(x) * inverse_;
    ChiTheta out;
    for (int a = -g; a <= g; ++a) {
        if (a == 0)
            continue;
        std::vector<Complex> chi(static_cast<std::size_t>(L));
        for (int l = 0; l < L; ++l) {
            // rho_a^{-l/2} cancels against the rho_a^{l/2} carried by column (a, l)
            Complex corr = 0.0;
            for (int b = -g; b <= g; ++b) {
                if (b == 0)
                    continue;
                for (int m = 0; m < data_.N; ++m) {
                    const Complex lm = left(flat(b, m));
                    if (lm == Complex(0.0))
                        continue;
                    Complex entry;
                    if (b != -a)
                        entry = double(sign_power(p)) * rho_half(b, m + 1) *
                                psi0_derivative(m, l, p, data_.w(-b), data_.w(a), data_.f);
                    else
                        entry = double(sign_power(p)) * rho_half(b, m + 1) * E_moment(m, l, data_.w(-b), data_.f, p);
                    corr += lm * entry;
                }
            }
            chi[static_cast<std::size_t>(l)] = psi0_derivative(0, l, p, x, data_.w(a), data_.f) + corr;
        }
        out.chi.push_back(std::move(chi));
    }
    for (int a = 1; a <= g; ++a) {
        const auto& plus = out.chi_of(a, g);
        const auto& minus = out.chi_of(-a, g);
        std::vector<Complex> theta(static_cast<std::size_t>(L));
        for (int l = 0; l < L; ++l)
            theta[static_cast<std::size_t>(l)] =
                plus[static_cast<std::size_t>(l)] +
                double(sign_power(p)) * ipow(data_.rho_of(a), p - 1 - l) * minus[static_cast<std::size_t>(L - 1 - l)];
        out.theta.push_back(std::move(theta));
    }
    out.theta_weights = {{"x", p}};
    return out;
}

GenusgReduction genusg_reduce(const Family& family, const SchottkyContext& ctx, std::span<const Complex> points,
                              bool with_channels, const ModeLabel& base)
{
    if (points.empty())
        throw DomainError("genus g reduction needs the insertion point");
    const std::size_t n = points.size() - 1;
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t k = i + 1; k < points.size(); ++k)
            if (points[i] == points[k])
                throw DomainError("coincident points");
    const std::span<const Complex> coords = points.first(n);
    const Complex x = points[n];
    const int p = ctx.data().p;
    const int bound = family.mode_bound().value_or(0);
    const auto& cfg = ctx.config();

    GenusgReduction out;
    out.slot.weights = {{"y" + std::to_string(n + 1), p}};
    for (std::size_t k = 0; k < n; ++k) {
        int small = 0;
        double tail = 0.0;
        for (int j = 0; j < cfg.q_order; ++j) {
            const Action act = family.guarded_act({int(k) + 1, 1, j}, coords, base);
            const Complex z = act.weight * family.guarded_evaluate(coords, act.label);
            Complex term = 0.0;
            if (z != Complex(0.0))
                term = ctx.psi_derivative(j, x, points[k]) * z;
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
        out.truncation_error += tail;
    }

    if (with_channels) {
        const ChiTheta ct = ctx.chi_theta(x);
        FormValue ch{0.0, ct.theta_weights};
        for (int a = 1; a <= ctx.data().g; ++a)
            for (int l = 0; l < 2 * p - 1; ++l) {
                const Action act = family.guarded_act({0, a, l}, coords, base);
                const Complex o = act.weight * family.guarded_evaluate(coords, act.label);
                if (o != Complex(0.0))
                    ch.value += ct.theta[static_cast<std::size_t>(a - 1)][static_cast<std::size_t>(l)] * o;
            }
        out.channel = ch;
        out.residual = std::abs(out.slot.value - ch.value);
    }
    return out;
}

} // namespace weierkit
