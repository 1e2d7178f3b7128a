#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "weierkit/elliptic.hpp"
#include "weierkit/family.hpp"
#include "weierkit/genus2.hpp"
#include "weierkit/genusg.hpp"

namespace weierkit {

/// Operators T_{k,l,m} with m in [m_begin, m_end); an absent m_end means the range is
/// summed until the terms die out.
struct ChannelRange {
    int k = 0;
    int l = 1;
    int m_begin = 0;
    std::optional<int> m_end;
};

/// Reduction coefficients f_{k,l,m}(z_{n+1}) of one kind of n-point function.
/// `points` always holds z_1..z_{n+1}, the last one being the inserted point.
class CoefficientSystem {
public:
    explicit CoefficientSystem(ToleranceConfig cfg) : cfg_(cfg) { cfg_.validate(); }
    virtual ~CoefficientSystem() = default;

    virtual Kind kind() const = 0;
    virtual bool accepts(Kind family_kind) const { return family_kind == kind(); }
    /// l(g)
    virtual int channel_count() const { return 1; }
    virtual std::vector<ChannelRange> ranges(std::span<const Complex> points) const = 0;
    virtual Complex coefficient(const OperatorIndex& op, std::span<const Complex> points) const = 0;
    /// Which formula applies at these points, when the kind has several.
    virtual std::string branch(std::span<const Complex>) const { return {}; }

    const ToleranceConfig& config() const { return cfg_; }

private:
    ToleranceConfig cfg_;
};

/// Sphere: f_{k,m}(z_{n+1}, z_k), k = 0..n, z_0 = 0. The first kernel index is the slot
/// k unless a fixed `weight` is given.
class RationalSystem final : public CoefficientSystem {
public:
    explicit RationalSystem(ToleranceConfig cfg = {}, std::optional<int> weight = std::nullopt);

    Kind kind() const override { return Kind::rational; }
    std::vector<ChannelRange> ranges(std::span<const Complex> points) const override;
    Complex coefficient(const OperatorIndex& op, std::span<const Complex> points) const override;

private:
    std::optional<int> weight_;
};

/// Torus: zero mode plus P_{m+1}(z_{n+1} - z_k, tau).
class EllipticSystem final : public CoefficientSystem {
public:
    EllipticSystem(Complex tau, ToleranceConfig cfg = {});

    Kind kind() const override { return Kind::elliptic; }
    std::vector<ChannelRange> ranges(std::span<const Complex> points) const override;
    Complex coefficient(const OperatorIndex& op, std::span<const Complex> points) const override;

private:
    Complex tau_;
};

/// Twisted torus: delta_{theta,1} delta_{phi,1} zero mode plus p(n,k) P_{m+1}[theta,phi](z_{n+1} - z_k).
class TwistedSystem final : public CoefficientSystem {
public:
    using Weight = std::function<Complex(int n, int k)>;

    TwistedSystem(Complex tau, TwistData twist, ToleranceConfig cfg = {}, Weight p = nullptr);

    Kind kind() const override { return Kind::twisted; }
    std::vector<ChannelRange> ranges(std::span<const Complex> points) const override;
    Complex coefficient(const OperatorIndex& op, std::span<const Complex> points) const override;

private:
    Complex tau_;
    TwistData twist_;
    Weight p_;
};

/// Jacobi n-point functions with parameter alpha z.
///
/// Generic alpha z: P~_{m+1}((z_{n+1} - z_k)/2 pi i, alpha z, tau). When alpha z lies within
/// switch_tol of lambda tau + mu, the degenerate formula is used: zero mode e^{-z_{n+1} lambda}
/// on T_{0,1,lambda} and P_{m+1,lambda}. With a negative mode l >= 1 the system gives
/// Z(.; mu_{1,-l}) instead; then z_1 is the distinguished point and z_{n+1} is unused.
class JacobiSystem final : public CoefficientSystem {
public:
    enum class Branch { automatic, generic, degenerate };

    JacobiSystem(Complex tau, Complex alpha_z, ToleranceConfig cfg = {}, Branch branch = Branch::automatic,
                 std::optional<int> negative_mode = std::nullopt, double switch_tol = 1e-9);

    Kind kind() const override { return degenerate_ ? Kind::jacobi_degenerate : Kind::jacobi; }
    bool accepts(Kind k) const override { return k == Kind::jacobi || k == Kind::jacobi_degenerate; }
    std::vector<ChannelRange> ranges(std::span<const Complex> points) const override;
    Complex coefficient(const OperatorIndex& op, std::span<const Complex> points) const override;
    std::string branch(std::span<const Complex>) const override { return degenerate_ ? "degenerate" : "generic"; }

    bool degenerate() const { return degenerate_; }
    /// alpha z = lambda tau + mu at the nearest lattice point.
    long lambda() const { return lambda_; }
    long mu() const { return mu_; }
    double lattice_distance() const { return distance_; }

private:
    Complex tau_;
    Complex alpha_z_;
    std::optional<int> negative_;
    bool degenerate_ = false;
    long lambda_ = 0;
    long mu_ = 0;
    double distance_ = 0.0;
};

/// Multiparameter Jacobi functions: the zero mode is present exactly when z . alpha is an
/// integer (within switch_tol); coefficients P~_{m+1}(z_s - z_{n+1}, z . alpha, tau), with the
/// n = 0 term dropped when the gate is on. A negative mode p >= 1 gives Z(.; mu_{1,-p}).
class MultiparameterSystem final : public CoefficientSystem {
public:
    MultiparameterSystem(Complex tau, std::vector<Complex> alpha, ToleranceConfig cfg = {},
                         std::optional<int> negative_mode = std::nullopt, double switch_tol = 1e-9);

    Kind kind() const override { return Kind::multiparameter; }
    std::vector<ChannelRange> ranges(std::span<const Complex> points) const override;
    Complex coefficient(const OperatorIndex& op, std::span<const Complex> points) const override;
    std::string branch(std::span<const Complex> points) const override;

    Complex dot(std::span<const Complex> points) const;
    bool gate(std::span<const Complex> points) const;

private:
    Complex tau_;
    std::vector<Complex> alpha_;
    std::optional<int> negative_;
    double switch_tol_;
};

/// Genus two. Channel form: f_1, f_2 on T_{0,1,0}, T_{0,2,0} and f_3(m) on T_{0,3,m}.
/// Slot form: P_{m+1}(p; z_{n+1}, z_k) on T_{k,1,m}. torus[i] places z_{i+1}; default torus 1.
class Genus2System final : public CoefficientSystem {
public:
    enum class Form { channel, slot };

    Genus2System(std::shared_ptr<const Genus2Context> ctx, std::vector<int> torus = {}, Form form = Form::channel);

    Kind kind() const override { return Kind::genus2; }
    int channel_count() const override { return form_ == Form::channel ? 3 : 1; }
    std::vector<ChannelRange> ranges(std::span<const Complex> points) const override;
    Complex coefficient(const OperatorIndex& op, std::span<const Complex> points) const override;

    Genus2Point point(std::span<const Complex> points, std::size_t i) const;

private:
    std::shared_ptr<const Genus2Context> ctx_;
    std::vector<int> torus_;
    Form form_;
};

/// Genus g. Channel form: theta_a(y_{n+1}; l) on T_{0,a,l}. Slot form: d^{(0,m)} psi_p(y_{n+1}, y_k)
/// on T_{k,1,m}.
class GenusgSystem final : public CoefficientSystem {
public:
    enum class Form { channel, slot };

    GenusgSystem(std::shared_ptr<const SchottkyContext> ctx, Form form = Form::channel);

    Kind kind() const override { return Kind::genusg; }
    int channel_count() const override { return form_ == Form::channel ? ctx_->data().g : 1; }
    std::vector<ChannelRange> ranges(std::span<const Complex> points) const override;
    Complex coefficient(const OperatorIndex& op, std::span<const Complex> points) const override;

private:
    std::shared_ptr<const SchottkyContext> ctx_;
    Form form_;
};

/// Another system with one coefficient shifted by `delta`; for fault injection.
class PerturbedSystem final : public CoefficientSystem {
public:
    PerturbedSystem(std::shared_ptr<const CoefficientSystem> base, OperatorIndex target, Complex delta);

    Kind kind() const override { return base_->kind(); }
    bool accepts(Kind k) const override { return base_->accepts(k); }
    int channel_count() const override { return base_->channel_count(); }
    std::vector<ChannelRange> ranges(std::span<const Complex> points) const override { return base_->ranges(points); }
    Complex coefficient(const OperatorIndex& op, std::span<const Complex> points) const override;
    std::string branch(std::span<const Complex> points) const override { return base_->branch(points); }

private:
    std::shared_ptr<const CoefficientSystem> base_;
    OperatorIndex target_;
    Complex delta_;
};

} // namespace weierkit
