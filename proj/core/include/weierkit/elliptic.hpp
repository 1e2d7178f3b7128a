#pragma once

#include <array>

#include "weierkit/config.hpp"
#include "weierkit/series.hpp"

namespace weierkit {

/// A point w on the torus C / (Z + Z tau).
struct TorusPoint {
    Complex w;
    Complex tau;

    Complex q() const { return nome(tau); }
    Complex q_w() const { return nome(w); }
    /// |q| < |q_w| < 1
    bool in_annulus() const
    {
        const double r = std::abs(q_w());
        return std::abs(q()) < r && r < 1.0;
    }
};

/// U(1) x U(1) twist (theta, phi) with phi = e^{2 pi i lambda}, 0 <= lambda < 1.
struct TwistData {
    Complex theta{1.0, 0.0};
    Complex phi{1.0, 0.0};
    double lambda = 0.0;

    /// theta = e^{2 pi i theta_angle}, phi = e^{2 pi i lambda}.
    static TwistData from_angles(double theta_angle, double lambda);
    /// Throws DomainError if the invariants fail at tolerance `tol`.
    void validate(double tol) const;
    bool untwisted() const { return theta == Complex(1.0) && lambda == 0.0; }
};

/// SL(2, Z) element (a b; c d).
struct Modular {
    long a = 1, b = 0, c = 0, d = 1;

    Complex act(Complex tau) const
    {
        return (static_cast<double>(a) * tau + static_cast<double>(b)) /
               (static_cast<double>(c) * tau + static_cast<double>(d));
    }
};

Evaluation eisenstein_E(int k, Complex tau, const ToleranceConfig& cfg = {});

/// Predicted E_k(gamma tau) = (c tau + d)^k E_k(tau) - delta_{k,2} c (c tau + d) / (2 pi i).
Evaluation eisenstein_transform(int k, const Modular& gamma, Complex tau, const ToleranceConfig& cfg = {});

/// E_{k,lambda} = sum_{j=0}^{k} lambda^j / j! E_{k-j}
Evaluation eisenstein_E_lambda(int k, double lambda, Complex tau, const ToleranceConfig& cfg = {});

/// E~_k(z, tau); E~_0 = -1.
Evaluation eisenstein_E_tilde(int k, Complex z, Complex tau, const ToleranceConfig& cfg = {});

/// q-expansion of E_k up to (not including) q^order.
TruncatedSeries eisenstein_q_expansion(int k, int order);

/// P_m(w, tau), m >= 1, with P_1 = -sum_{n != 0} q_w^n / (1 - q^n) - 1/2.
Evaluation weierstrass_P(int m, Complex w, Complex tau, const ToleranceConfig& cfg = {});

/// The reduction-formula normalisation P_m = (-1)^m/(m-1)! sum_{n != 0} n^{m-1} q_w^n / (1 - q^n).
/// Differs from weierstrass_P only for m = 1, by +1/2.
Evaluation weierstrass_P_zhu(int m, Complex w, Complex tau, const ToleranceConfig& cfg = {});

/// P_{m,lambda}(w, tau), m >= 1, summed over n in Z \ {-lambda}. Any real lambda; the
/// excluded index only exists for integer lambda.
Evaluation weierstrass_P_lambda(int m, double lambda, Complex w, Complex tau, const ToleranceConfig& cfg = {});

/// P~_m(w, z, tau), m >= 1.
Evaluation weierstrass_P_tilde(int m, Complex w, Complex z, Complex tau, const ToleranceConfig& cfg = {});

/// P~_m with the n = 0 term dropped. Used where q_z = 1 is allowed (the z.alpha in Z
/// branch of multiparameter Jacobi reductions).
Evaluation weierstrass_P_tilde_regular(int m, Complex w, Complex z, Complex tau, const ToleranceConfig& cfg = {});

/// P_k[theta, phi](z, tau), k >= 1; the n = 0 term is omitted when (theta, phi) = (1, 1).
Evaluation twisted_P(int k, const TwistData& twist, Complex z, Complex tau, const ToleranceConfig& cfg = {});

} // namespace weierkit
