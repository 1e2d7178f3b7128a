#include "weierkit/systems.hpp"

#include <cmath>

#include "weierkit/combinatorics.hpp"
#include "weierkit/genus0.hpp"

namespace weierkit {

namespace {

std::size_t level(std::span<const Complex> points)
{
    if (points.empty())
        throw DomainError("the inserted point z_{n+1} is missing");
    return points.size() - 1;
}

void check_slot(const OperatorIndex& op, std::size_t n)
{
    if (op.k < 0 || static_cast<std::size_t>(op.k) > n)
        throw DomainError("slot index out of range");
}

std::vector<ChannelRange> slots(int first, std::size_t n)
{
    std::vector<ChannelRange> r;
    for (int k = first; k <= static_cast<int>(n); ++k)
        r.push_back({k, 1, 0, std::nullopt});
    return r;
}

} // namespace

RationalSystem::RationalSystem(ToleranceConfig cfg, std::optional<int> weight)
    : CoefficientSystem(cfg), weight_(weight)
{
    if (weight_ && *weight_ < 0)
        throw DomainError("rational weight must be non-negative");
}

std::vector<ChannelRange> RationalSystem::ranges(std::span<const Complex> points) const
{
    return slots(0, level(points));
}

Complex RationalSystem::coefficient(const OperatorIndex& op, std::span<const Complex> points) const
{
    const std::size_t n = level(points);
    check_slot(op, n);
    const Complex w = op.k == 0 ? Complex(0.0) : points[static_cast<std::size_t>(op.k - 1)];
    return f_rational({weight_.value_or(op.k), op.m}, points[n], w);
}

EllipticSystem::EllipticSystem(Complex tau, ToleranceConfig cfg) : CoefficientSystem(cfg), tau_(tau)
{
    if (!(tau.imag() > 0.0))
        throw DomainError("Im tau must be positive");
}

std::vector<ChannelRange> EllipticSystem::ranges(std::span<const Complex> points) const
{
    auto r = slots(1, level(points));
    r.insert(r.begin(), ChannelRange{0, 1, 0, 1});
    return r;
}

Complex EllipticSystem::coefficient(const OperatorIndex& op, std::span<const Complex> points) const
{
    const std::size_t n = level(points);
    check_slot(op, n);
    if (op.k == 0)
        return 1.0;
    return weierstrass_P_zhu(op.m + 1, points[n] - points[static_cast<std::size_t>(op.k - 1)], tau_, config())
        .value;
}

TwistedSystem::TwistedSystem(Complex tau, TwistData twist, ToleranceConfig cfg, Weight p)
    : CoefficientSystem(cfg), tau_(tau), twist_(twist), p_(std::move(p))
{
    if (!(tau.imag() > 0.0))
        throw DomainError("Im tau must be positive");
    twist_.validate(std::max(cfg.abs_tol, 1e-12));
}

std::vector<ChannelRange> TwistedSystem::ranges(std::span<const Complex> points) const
{
    auto r = slots(1, level(points));
    const double tol = std::max(config().abs_tol, 1e-12);
    if (std::abs(twist_.theta - 1.0) <= tol && std::abs(twist_.phi - 1.0) <= tol)
        r.insert(r.begin(), ChannelRange{0, 1, 0, 1});
    return r;
}

Complex TwistedSystem::coefficient(const OperatorIndex& op, std::span<const Complex> points) const
{
    const std::size_t n = level(points);
    check_slot(op, n);
    if (op.k == 0)
        return 1.0;
    const Complex weight = p_ ? p_(static_cast<int>(n), op.k) : Complex(1.0);
    return weight *
           twisted_P(op.m + 1, twist_, points[n] - points[static_cast<std::size_t>(op.k - 1)], tau_, config()).value;
}

JacobiSystem::JacobiSystem(Complex tau, Complex alpha_z, ToleranceConfig cfg, Branch branch,
                           std::optional<int> negative_mode, double switch_tol)
    : CoefficientSystem(cfg), tau_(tau), alpha_z_(alpha_z), negative_(negative_mode)
{
    if (!(tau.imag() > 0.0))
        throw DomainError("Im tau must be positive");
    if (negative_ && *negative_ < 1)
        throw DomainError("negative mode l must be at least 1");
    lambda_ = std::lround(alpha_z.imag() / tau.imag());
    mu_ = std::lround((alpha_z - double(lambda_) * tau).real());
    distance_ = std::abs(alpha_z - double(lambda_) * tau - double(mu_));
    switch (branch) {
    case Branch::automatic:
        degenerate_ = distance_ < switch_tol;
        break;
    case Branch::generic:
        degenerate_ = false;
        break;
    case Branch::degenerate:
        if (distance_ >= switch_tol)
            throw DomainError("alpha z is not in Z tau + Z");
        degenerate_ = true;
        break;
    }
}

std::vector<ChannelRange> JacobiSystem::ranges(std::span<const Complex> points) const
{
    const std::size_t n = level(points);
    if (negative_) {
        if (n < 1)
            throw DomainError("a negative mode needs at least one point");
        auto r = slots(1, n);
        if (degenerate_)
            r.insert(r.begin(), ChannelRange{0, 1, -1, 0});
        return r;
    }
    auto r = slots(1, n);
    if (degenerate_)
        r.insert(r.begin(), ChannelRange{0, 1, int(lambda_), int(lambda_) + 1});
    return r;
}

Complex JacobiSystem::coefficient(const OperatorIndex& op, std::span<const Complex> points) const
{
    const std::size_t n = level(points);
    check_slot(op, n);
    const auto& cfg = config();
    const double lam = double(lambda_);
    if (!negative_) {
        if (op.k == 0)
            return std::exp(-points[n] * lam);
        const Complex w = (points[n] - points[static_cast<std::size_t>(op.k - 1)]) / two_pi_i;
        if (degenerate_)
            return weierstrass_P_lambda(op.m + 1, lam, w, tau_, cfg).value;
        return weierstrass_P_tilde(op.m + 1, w, alpha_z_, tau_, cfg).value;
    }
    const int l = *negative_;
    const int m = op.m;
    const double c = binomial(m + l - 1, m);
    if (op.k == 0)
        return double(sign_power(l + 1)) * std::pow(lam, l - 1) / factorial(l - 1);
    if (op.k == 1) {
        const Complex e = degenerate_ ? eisenstein_E_lambda(m + l, lam, tau_, cfg).value
                                      : eisenstein_E_tilde(m + l, alpha_z_, tau_, cfg).value;
        return double(sign_power(m + 1)) * c * e;
    }
    const Complex w = (points[0] - points[static_cast<std::size_t>(op.k - 1)]) / two_pi_i;
    const Complex P = degenerate_ ? weierstrass_P_lambda(m + l, lam, w, tau_, cfg).value
                                  : weierstrass_P_tilde(m + l, w, alpha_z_, tau_, cfg).value;
    return double(sign_power(l + 1)) * c * P;
}

MultiparameterSystem::MultiparameterSystem(Complex tau, std::vector<Complex> alpha, ToleranceConfig cfg,
                                           std::optional<int> negative_mode, double switch_tol)
    : CoefficientSystem(cfg), tau_(tau), alpha_(std::move(alpha)), negative_(negative_mode), switch_tol_(switch_tol)
{
    if (!(tau.imag() > 0.0))
        throw DomainError("Im tau must be positive");
    if (negative_ && *negative_ < 1)
        throw DomainError("negative mode p must be at least 1");
}

Complex MultiparameterSystem::dot(std::span<const Complex> points) const
{
    const std::size_t n = level(points);
    if (alpha_.size() < n)
        throw DomainError("need one alpha per point");
    Complex s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        s += points[i] * alpha_[i];
    return s;
}

bool MultiparameterSystem::gate(std::span<const Complex> points) const
{
    const Complex d = dot(points);
    return std::abs(d - std::round(d.real())) < switch_tol_;
}

std::string MultiparameterSystem::branch(std::span<const Complex> points) const
{
    return gate(points) ? "integral" : "generic";
}

std::vector<ChannelRange> MultiparameterSystem::ranges(std::span<const Complex> points) const
{
    const std::size_t n = level(points);
    auto r = slots(1, n);
    const bool on = gate(points);
    if (negative_) {
        if (n < 1)
            throw DomainError("a negative mode needs at least one point");
        if (on && *negative_ == 1)
            r.insert(r.begin(), ChannelRange{0, 1, 0, 1});
        return r;
    }
    if (on)
        r.insert(r.begin(), ChannelRange{0, 1, 0, 1});
    return r;
}

Complex MultiparameterSystem::coefficient(const OperatorIndex& op, std::span<const Complex> points) const
{
    const std::size_t n = level(points);
    check_slot(op, n);
    if (op.k == 0)
        return 1.0;
    const auto& cfg = config();
    const Complex d = dot(points);
    const bool on = gate(points);
    auto Ptilde = [&](int m, Complex w) {
        return on ? weierstrass_P_tilde_regular(m, w, d, tau_, cfg).value
                  : weierstrass_P_tilde(m, w, d, tau_, cfg).value;
    };
    const Complex zs = points[static_cast<std::size_t>(op.k - 1)];
    if (!negative_)
        return Ptilde(op.m + 1, zs - points[n]);
    const int p = *negative_;
    const double c = double(sign_power(p + 1)) * binomial(op.m + p - 1, p - 1);
    if (op.k == 1)
        return c * eisenstein_E_tilde(op.m + p, d, tau_, cfg).value;
    return c * Ptilde(op.m + p, zs - points[0]);
}

Genus2System::Genus2System(std::shared_ptr<const Genus2Context> ctx, std::vector<int> torus, Form form)
    : CoefficientSystem(ctx->config()), ctx_(std::move(ctx)), torus_(std::move(torus)), form_(form)
{
    for (int t : torus_)
        if (t != 1 && t != 2)
            throw DomainError("torus index must be 1 or 2");
}

Genus2Point Genus2System::point(std::span<const Complex> points, std::size_t i) const
{
    return {points[i], i < torus_.size() ? torus_[i] : 1};
}

std::vector<ChannelRange> Genus2System::ranges(std::span<const Complex> points) const
{
    const std::size_t n = level(points);
    if (form_ == Form::slot)
        return slots(1, n);
    return {{0, 1, 0, 1}, {0, 2, 0, 1}, {0, 3, 1, ctx_->sewing().N + 1}};
}

Complex Genus2System::coefficient(const OperatorIndex& op, std::span<const Complex> points) const
{
    const std::size_t n = level(points);
    check_slot(op, n);
    const Genus2Point x = point(points, n);
    if (form_ == Form::slot) {
        if (op.k == 0)
            throw DomainError("slot form has no zero mode");
        return ctx_->weierstrass(op.m, x, point(points, static_cast<std::size_t>(op.k - 1)));
    }
    if (op.k != 0)
        throw DomainError("channel form only has zero-mode operators");
    const F2Coefficients f = ctx_->f2(x);
    switch (op.l) {
    case 1:
        return f.f1;
    case 2:
        return f.f2;
    case 3:
        if (op.m < 1 || op.m > ctx_->sewing().N)
            throw DomainError("channel 3 mode out of range");
        return f.f3(op.m - 1);
    default:
        throw DomainError("genus two channel must be 1, 2 or 3");
    }
}

GenusgSystem::GenusgSystem(std::shared_ptr<const SchottkyContext> ctx, Form form)
    : CoefficientSystem(ctx->config()), ctx_(std::move(ctx)), form_(form)
{
}

std::vector<ChannelRange> GenusgSystem::ranges(std::span<const Complex> points) const
{
    const std::size_t n = level(points);
    if (form_ == Form::slot)
        return slots(1, n);
    std::vector<ChannelRange> r;
    for (int a = 1; a <= ctx_->data().g; ++a)
        r.push_back({0, a, 0, 2 * ctx_->data().p - 1});
    return r;
}

Complex GenusgSystem::coefficient(const OperatorIndex& op, std::span<const Complex> points) const
{
    const std::size_t n = level(points);
    check_slot(op, n);
    if (form_ == Form::slot) {
        if (op.k == 0)
            throw DomainError("slot form has no zero mode");
        return ctx_->psi_derivative(op.m, points[n], points[static_cast<std::size_t>(op.k - 1)]);
    }
    if (op.k != 0 || op.l < 1 || op.l > ctx_->data().g || op.m < 0 || op.m > 2 * ctx_->data().p - 2)
        throw DomainError("genus g channel index out of range");
    const ChiTheta ct = ctx_->chi_theta(points[n]);
    return ct.theta[static_cast<std::size_t>(op.l - 1)][static_cast<std::size_t>(op.m)];
}

PerturbedSystem::PerturbedSystem(std::shared_ptr<const CoefficientSystem> base, OperatorIndex target, Complex delta)
    : CoefficientSystem(base->config()), base_(std::move(base)), target_(target), delta_(delta)
{
}

Complex PerturbedSystem::coefficient(const OperatorIndex& op, std::span<const Complex> points) const
{
    const Complex c = base_->coefficient(op, points);
    return op == target_ ? c + delta_ : c;
}

} // namespace weierkit
