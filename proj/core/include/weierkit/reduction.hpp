#pragma once

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>

#include "weierkit/family.hpp"
#include "weierkit/systems.hpp"

namespace weierkit {

struct ReductionReport {
    Complex value{};
    int terms_used = 0;
    double truncation_error_estimate = 0.0;
    std::map<std::string, double> residuals;
    std::string branch;
};

/// delta^n Z: sum over l, k, m of f_{k,l,m}(z_{n+1}) T_{k,l,m} Z(z_1..z_n; base).
/// `points` holds z_1..z_{n+1}. Infinite m-ranges stop after three consecutive terms
/// below abs_tol once past the family's mode bound, and never run past q_order terms.
/// Throws DomainError on a kind mismatch, a wrong point count or coincident points.
ReductionReport apply_delta(int n, const Family& family, const CoefficientSystem& system,
                            std::span<const Complex> points, const ModeLabel& base = {});

/// |delta^{n+1} delta^n Z| evaluated as the double sum over (k', l', m') and (k, l, m) with
/// points z_1..z_{n+2}. The inner operator T_{k,l,m} is applied first and the outer
/// T_{k',l',m'} to its result, i.e. the word is [.., (k,l,m), (k',l',m')].
double check_chain_condition(int n, const Family& family, const CoefficientSystem& system,
                             std::span<const Complex> points, const ModeLabel& base = {});

struct FunctionalResidual {
    double residual = 0.0;
    /// Rational kind only: |sum_k (d/dz + f_{k,0}(z, z_k)) Z(z_1..z_k + z..z_n)| at z = z_{n+1},
    /// with d/dz by central differences.
    std::optional<double> continuation_residual;
};

/// |sum_{k >= 1} f_{k,l,m}(z_{n+1}) T_{k,l,m} Z(z_1..z_n)|, i.e. delta^n Z without its zero modes.
FunctionalResidual functional_equation_residual(int n, const Family& family, const CoefficientSystem& system,
                                                std::span<const Complex> points, const ModeLabel& base = {});

struct NullpointReduction {
    ReductionReport report;
    /// Z(z_1..z_n) = sum over words of coefficient * Z(; word).
    std::map<ModeLabel, Complex> trace;
};

/// Reduces Z(z_1..z_n) recursively in z_n, z_{n-1}, .., z_1 down to 0-point values.
/// Throws DegenerateError when a level's terms are not all negligible but cancel below abs_tol.
NullpointReduction reduce_to_nullpoint(const Family& family, const CoefficientSystem& system,
                                       std::span<const Complex> points, const ModeLabel& base = {});

/// The image delta^{n-1} W of a family W: evaluate(z_1..z_n, label) is apply_delta(n - 1, W, ..).value.
class DeltaImageFamily final : public Family {
public:
    DeltaImageFamily(std::shared_ptr<const Family> inner, std::shared_ptr<const CoefficientSystem> system);

    Kind kind() const override { return inner_->kind(); }
    Complex evaluate(std::span<const Complex> points, const ModeLabel& label) const override;
    std::optional<int> mode_bound() const override { return inner_->mode_bound(); }
    bool concurrency_safe() const override { return inner_->concurrency_safe(); }

private:
    std::shared_ptr<const Family> inner_;
    std::shared_ptr<const CoefficientSystem> system_;
};

} // namespace weierkit
