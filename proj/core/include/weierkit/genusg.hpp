#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "weierkit/config.hpp"
#include "weierkit/family.hpp"
#include "weierkit/matrix.hpp"

namespace weierkit {

/// Finite Laurent polynomial sum_e c_e x^e.
struct LaurentPolynomial {
    std::map<int, Complex> terms;

    Complex evaluate(Complex x) const;
    /// d^k/dx^k / k!
    Complex derivative(int k, Complex x) const;
};

/// A value carrying dx^p dy^q weight bookkeeping. The weights never enter arithmetic.
struct FormValue {
    Complex value{};
    std::vector<std::pair<std::string, int>> weights;

    /// Weight of `variable`, zero when absent.
    int weight(const std::string& variable) const;
    /// Product of forms; weights of the same variable add.
    friend FormValue operator*(const FormValue& a, const FormValue& b);
};

/// Schottky data: points w_{-a}, w_a and sewing scalars rho_a for a = 1..g.
struct SchottkyData {
    int g = 1;
    std::vector<Complex> w_minus; ///< w_{-1}, ..., w_{-g}
    std::vector<Complex> w_plus;  ///< w_1, ..., w_g
    std::vector<Complex> rho;     ///< rho_1, ..., rho_g
    int p = 1;
    int N = 16;
    /// f_0 .. f_{2p-2}; missing entries are zero.
    std::vector<LaurentPolynomial> f;

    /// w_a for a in +-{1..g}
    Complex w(int a) const;
    /// rho_{|a|}
    Complex rho_of(int a) const;
};

/// psi_p^{(0)}(x, y) = 1/(x - y) + sum_l f_l(x) y^l
Complex psi0(int p, Complex x, Complex y, const std::vector<LaurentPolynomial>& f);

/// d_x^{(i)} d_y^{(j)} psi_p^{(0)}(x, y) with d^{(k)} = d^k/dx^k / k!.
Complex psi0_derivative(int i, int j, int p, Complex x, Complex y, const std::vector<LaurentPolynomial>& f);

/// E_m^n(y) = sum_l d^{(m)} f_l(y) d^{(n)} y^l
Complex E_moment(int m, int n, Complex y, const std::vector<LaurentPolynomial>& f, int p);

struct NeumannInverse {
    Matrix solve;    ///< direct solution of (I - R~) X = I
    Matrix series;   ///< sum_k R~^k
    double residual; ///< || (I - R~) X - I ||_inf for the direct solution
};

/// Throws ConvergenceError when the spectral radius estimate of R~ is >= 0.9.
NeumannInverse neumann_inverse(const Matrix& R_tilde);

struct ChiTheta {
    /// chi[a] for a = -g..-1, 1..g in that order, each of length 2p - 1.
    std::vector<std::vector<Complex>> chi;
    /// theta[a - 1] for a = 1..g.
    std::vector<std::vector<Complex>> theta;
    std::vector<std::pair<std::string, int>> theta_weights;

    const std::vector<Complex>& chi_of(int a, int g) const;
};

struct KernelVectors {
    RowVector p_row;
    ColVector q_col;
    RowVector p_tilde_row;
};

/// The genus g stack for one SchottkyData, with R, R~ and (I - R~)^{-1} cached.
/// Rows and columns are indexed (a, m), block 2(|a| - 1) + (a > 0), m = 0..N-1.
class SchottkyContext {
public:
    SchottkyContext(SchottkyData data, ToleranceConfig cfg = {});

    const SchottkyData& data() const { return data_; }
    const ToleranceConfig& config() const { return cfg_; }
    const Matrix& R() const { return R_; }
    const Matrix& R_tilde() const { return R_tilde_; }
    const Matrix& resolvent() const { return inverse_; }
    double spectral_radius() const { return radius_; }
    double inverse_residual() const { return residual_; }

    int flat(int a, int m) const;
    /// Entry R_{ab}(m, n).
    Complex R_entry(int a, int m, int b, int n) const;

    RowVector p_row(Complex x) const;
    RowVector p_tilde_row(Complex x) const;
    /// d_y^{(j)} q(y)
    ColVector q_col(Complex y, int j = 0) const;
    KernelVectors kernel_vectors(Complex x, Complex y) const;

    /// psi_p(x, y) dx^p dy^{1-p}
    FormValue psi(Complex x, Complex y) const;
    /// d^{(0,j)} psi_p(x, y)
    Complex psi_derivative(int j, Complex x, Complex y) const;

    ChiTheta chi_theta(Complex x) const;

private:
    int block(int a) const;
    Complex rho_half(int a, int k) const;

    SchottkyData data_;
    ToleranceConfig cfg_;
    std::vector<Complex> sqrt_rho_;
    Matrix R_;
    Matrix R_tilde_;
    Matrix inverse_;
    double radius_ = 0.0;
    double residual_ = 0.0;
};

struct GenusgReduction {
    FormValue slot;                   ///< sum_k sum_j d^{(0,j)} Psi_p(y_{n+1}, y_k) Z(.; mu_{k,j})
    std::optional<FormValue> channel; ///< sum_a Theta_a(y_{n+1}) . O_a
    std::optional<double> residual;   ///< |slot - channel|
    double truncation_error = 0.0;
    int terms_used = 0;
};

/// Z(y_{n+1}, y_1..y_n). Z(.; mu_{k,j}) is read as T_{k,1,j}; o_a(l) as T_{0,a,l}.
GenusgReduction genusg_reduce(const Family& family, const SchottkyContext& ctx, std::span<const Complex> points,
                              bool with_channels = false, const ModeLabel& base = {});

} // namespace weierkit
