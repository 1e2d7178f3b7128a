#pragma once

#include <optional>
#include <vector>

#include "weierkit/config.hpp"
#include "weierkit/family.hpp"
#include "weierkit/matrix.hpp"

namespace weierkit {

/// Two tori glued with sewing parameter epsilon.
struct SewingData {
    Complex tau1{0.0, 1.0};
    Complex tau2{0.0, 1.0};
    Complex epsilon{0.0, 0.0};
    int p = 1;
    int N = 16;
    /// Read 1^{delta_ba} in f_a literally as 1 instead of delta_ab.
    bool literal_calF = false;

    Complex tau(int a) const { return a == 1 ? tau1 : tau2; }
};

/// A point on torus 1 or 2.
struct Genus2Point {
    Complex z;
    int torus = 1;
};

enum class Genus2Branch { same_torus, cross_torus };

struct IndexMatrices {
    Matrix Gamma, Delta, Pi;
};

/// Gamma(m,n) = [m + n = 2p - 2], Delta(m,n) = [m = n + 2p - 2], Pi = Gamma^2; indices from 1.
IndexMatrices build_index_matrices(int p, int N);

/// Lambda_a(m,n) = eps^{(m+n)/2} (-1)^{n+1} C(m+n-1, n) E_{m+n}(tau_a).
Matrix build_Lambda(int a, const SewingData& sewing, const ToleranceConfig& cfg = {});
/// A_a(k,l) = (-1)^{k+1} eps^{(k+l)/2} / sqrt(kl) (k+l-1)!/((k-1)!(l-1)!) E_{k+l}(tau_a).
Matrix build_A(int a, const SewingData& sewing, const ToleranceConfig& cfg = {});
/// S(m,n) = sqrt(m) delta_{mn}.
Matrix build_S(int N);

struct F2Coefficients {
    Complex f1, f2;
    RowVector f3;
};

/// Per-SewingData cache of the sewing matrices and the factorised (1 - L~_abar L~_a).
/// Immutable after construction, so shared use across threads is safe.
class Genus2Context {
public:
    /// Throws ConvergenceError when the spectral radius of L~_abar L~_a is >= 0.9.
    Genus2Context(SewingData sewing, ToleranceConfig cfg = {});

    const SewingData& sewing() const { return sewing_; }
    const ToleranceConfig& config() const { return cfg_; }
    /// Principal square root of epsilon; every half-integer power uses it.
    Complex sqrt_epsilon() const { return sqrt_eps_; }
    double spectral_radius(int a) const { return radius_[a - 1]; }

    const Matrix& Gamma() const { return index_.Gamma; }
    const Matrix& Delta() const { return index_.Delta; }
    const Matrix& Pi() const { return index_.Pi; }
    const Matrix& Lambda(int a) const { return lambda_[a - 1]; }
    const Matrix& Lambda_tilde(int a) const { return lambda_tilde_[a - 1]; }

    /// R(x; m) = eps^{m/2} P_{m+1}(x, tau_a)
    RowVector R_row(int a, Complex x) const;
    /// Q(p; x) = R(x) Delta (1 - L~_abar L~_a)^{-1}, by LU.
    RowVector Q_row(int a, Complex x) const;
    /// Same, summing the Neumann series.
    RowVector Q_row_neumann(int a, Complex x) const;
    /// P_{j+1}(y; m) = eps^{m/2} C(m+j-1, j) (P_{j+m}(y, tau_a) - delta_{j0} E_m(tau_a))
    ColVector P_column(int j, int a, Complex y) const;

    /// Genus two Weierstrass function P_{j+1}(p; x, y), x on torus a and y on
    /// torus a (same_torus) or the other one (cross_torus).
    Complex weierstrass(int j, Genus2Branch branch, int a, Complex x, Complex y) const;
    Complex weierstrass(int j, const Genus2Point& x, const Genus2Point& y) const;

    /// f_1, f_2 and the row f_3 for z on torus b.
    F2Coefficients f2(const Genus2Point& z) const;

private:
    Complex eps_pow_half(int k) const;
    static int other(int a) { return a == 1 ? 2 : 1; }

    SewingData sewing_;
    ToleranceConfig cfg_;
    Complex sqrt_eps_;
    IndexMatrices index_;
    Matrix lambda_[2];
    Matrix lambda_tilde_[2];
    Matrix resolvent_[2]; ///< (1 - L~_abar L~_a)^{-1}
    double radius_[2] = {0.0, 0.0};
    std::vector<Complex> eisenstein_[2]; ///< E_k(tau_a), k < 2N + 2
};

struct Genus2Reduction {
    Evaluation slot;                    ///< sum_i sum_j P_{j+1}(p; z_{n+1}, z_i) Z(.; mu_{i,j})
    std::optional<Evaluation> channel;  ///< f_1 Z_{n,1} + f_2 Z_{n,2} + f_3 X
    int terms_used = 0;
};

/// Z(z_1..z_{n+1}) by the genus two reduction formula. Z(.; mu_{i,j}) is read from the
/// family as T_{i,1,j}; Z_{n,1}, Z_{n,2} as T_{0,1,0}, T_{0,2,0} and X(m) as T_{0,3,m}.
Genus2Reduction genus2_reduce(const Family& family, const Genus2Context& ctx, std::span<const Genus2Point> points,
                              bool with_channels = false, const ModeLabel& base = {});

} // namespace weierkit
