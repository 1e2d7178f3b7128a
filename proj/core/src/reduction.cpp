#include "weierkit/reduction.hpp"

#include <vector>

namespace weierkit {

namespace {

void check_inputs(int n, const Family& family, const CoefficientSystem& system, std::span<const Complex> points,
                  std::size_t expected)
{
    if (n < 0)
        throw DomainError("n must be non-negative");
    if (!system.accepts(family.kind()))
        throw DomainError("family of kind " + to_string(family.kind()) + " does not match system of kind " +
                          to_string(system.kind()));
    if (points.size() != expected)
        throw DomainError("expected " + std::to_string(expected) + " points, got " + std::to_string(points.size()));
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (!is_finite(points[i]))
            throw DomainError("points must be finite");
        for (std::size_t k = i + 1; k < points.size(); ++k)
            if (points[i] == points[k])
                throw DomainError("coincident points");
    }
}

struct SumState {
    Complex value{};
    int terms = 0;
    double error = 0.0;
};

/// Runs `term(op)` over every operator of the system at `points`, truncating infinite ranges.
template <class Term>
SumState sum_ranges(const CoefficientSystem& system, std::span<const Complex> points, int bound, bool skip_zero_mode,
                    Term&& term)
{
    const auto& cfg = system.config();
    SumState s;
    for (const auto& r : system.ranges(points)) {
        if (skip_zero_mode && r.k == 0)
            continue;
        if (r.m_end) {
            for (int m = r.m_begin; m < *r.m_end; ++m) {
                s.value += term(OperatorIndex{r.k, r.l, m});
                ++s.terms;
            }
            continue;
        }
        int small = 0;
        double tail = 0.0;
        for (int m = r.m_begin; m < r.m_begin + cfg.q_order; ++m) {
            const Complex t = term(OperatorIndex{r.k, r.l, m});
            s.value += t;
            ++s.terms;
            if (std::abs(t) < cfg.abs_tol) {
                tail += std::abs(t);
                if (++small >= 3 && m >= bound)
                    break;
            } else {
                small = 0;
                tail = 0.0;
            }
            if (m == r.m_begin + cfg.q_order - 1)
                tail = std::max(tail, std::abs(t));
        }
        s.error += tail;
    }
    return s;
}

} // namespace

ReductionReport apply_delta(int n, const Family& family, const CoefficientSystem& system,
                            std::span<const Complex> points, const ModeLabel& base)
{
    check_inputs(n, family, system, points, static_cast<std::size_t>(n) + 1);
    const auto inner = points.first(static_cast<std::size_t>(n));
    const auto s = sum_ranges(system, points, family.mode_bound().value_or(0), false, [&](const OperatorIndex& op) {
        const Action a = family.guarded_act(op, inner, base);
        const Complex z = a.weight * family.guarded_evaluate(inner, a.label);
        if (z == Complex(0.0))
            return Complex(0.0);
        return system.coefficient(op, points) * z;
    });
    ReductionReport r;
    r.value = s.value;
    r.terms_used = s.terms;
    r.truncation_error_estimate = s.error;
    r.branch = system.branch(points);
    return r;
}

double check_chain_condition(int n, const Family& family, const CoefficientSystem& system,
                             std::span<const Complex> points, const ModeLabel& base)
{
    check_inputs(n, family, system, points, static_cast<std::size_t>(n) + 2);
    const auto level1 = points.first(static_cast<std::size_t>(n) + 1);
    const auto level0 = points.first(static_cast<std::size_t>(n));
    const int bound = family.mode_bound().value_or(0);
    const auto outer = sum_ranges(system, points, bound, false, [&](const OperatorIndex& op_outer) {
        const auto inner = sum_ranges(system, level1, bound, false, [&](const OperatorIndex& op_inner) {
            const Action a = family.guarded_act(op_inner, level0, base);
            const Action b = family.guarded_act(op_outer, level0, a.label);
            const Complex z = a.weight * b.weight * family.guarded_evaluate(level0, b.label);
            if (z == Complex(0.0))
                return Complex(0.0);
            return system.coefficient(op_inner, level1) * z;
        });
        if (inner.value == Complex(0.0))
            return Complex(0.0);
        return system.coefficient(op_outer, points) * inner.value;
    });
    return std::abs(outer.value);
}

FunctionalResidual functional_equation_residual(int n, const Family& family, const CoefficientSystem& system,
                                                std::span<const Complex> points, const ModeLabel& base)
{
    check_inputs(n, family, system, points, static_cast<std::size_t>(n) + 1);
    const auto inner = points.first(static_cast<std::size_t>(n));
    const auto s = sum_ranges(system, points, family.mode_bound().value_or(0), true, [&](const OperatorIndex& op) {
        const Action a = family.guarded_act(op, inner, base);
        const Complex z = a.weight * family.guarded_evaluate(inner, a.label);
        if (z == Complex(0.0))
            return Complex(0.0);
        return system.coefficient(op, points) * z;
    });
    FunctionalResidual out;
    out.residual = std::abs(s.value);

    if (system.kind() == Kind::rational) {
        const Complex z = points[static_cast<std::size_t>(n)];
        const double h = 1e-5 * std::max(1.0, std::abs(z));
        Complex total = 0.0;
        for (int k = 1; k <= n; ++k) {
            auto shifted = [&](Complex shift) {
                std::vector<Complex> pts(inner.begin(), inner.end());
                pts[static_cast<std::size_t>(k - 1)] += shift;
                return family.guarded_evaluate(pts, base);
            };
            const Complex dz = (shifted(z + h) - shifted(z - h)) / (2.0 * h);
            total += dz + system.coefficient({k, 1, 0}, points) * shifted(z);
        }
        out.continuation_residual = std::abs(total);
    }
    return out;
}

namespace {

struct Level {
    Complex value{};
    std::map<ModeLabel, Complex> trace;
    int terms = 0;
    double error = 0.0;
};

Level reduce_level(const Family& family, const CoefficientSystem& system, std::span<const Complex> points,
                   const ModeLabel& label)
{
    Level out;
    if (points.empty()) {
        out.value = family.guarded_evaluate(points, label);
        out.trace[label] = 1.0;
        return out;
    }
    const auto inner = points.first(points.size() - 1);
    double largest = 0.0;
    const auto s = sum_ranges(system, points, family.mode_bound().value_or(0), false, [&](const OperatorIndex& op) {
        const Action a = family.guarded_act(op, inner, label);
        Level sub = reduce_level(family, system, inner, a.label);
        out.terms += sub.terms;
        out.error += std::abs(a.weight) * sub.error;
        if (sub.value == Complex(0.0))
            return Complex(0.0);
        const Complex c = system.coefficient(op, points) * a.weight;
        for (const auto& [word, coeff] : sub.trace)
            out.trace[word] += c * coeff;
        const Complex t = c * sub.value;
        largest = std::max(largest, std::abs(t));
        return t;
    });
    out.value = s.value;
    out.terms += s.terms;
    out.error += s.error;
    const double tol = system.config().abs_tol;
    if (largest >= tol && std::abs(out.value) < tol)
        throw DegenerateError("reduction cancels at level " + std::to_string(points.size()) +
                              ": the point configuration lies in the excluded set");
    return out;
}

} // namespace

NullpointReduction reduce_to_nullpoint(const Family& family, const CoefficientSystem& system,
                                       std::span<const Complex> points, const ModeLabel& base)
{
    const int n = static_cast<int>(points.size());
    if (n > 0)
        check_inputs(n - 1, family, system, points, points.size());
    else if (!system.accepts(family.kind()))
        throw DomainError("family kind does not match system kind");
    Level l = reduce_level(family, system, points, base);
    NullpointReduction out;
    out.report.value = l.value;
    out.report.terms_used = l.terms;
    out.report.truncation_error_estimate = l.error;
    if (n > 0)
        out.report.branch = system.branch(points);
    out.trace = std::move(l.trace);
    return out;
}

DeltaImageFamily::DeltaImageFamily(std::shared_ptr<const Family> inner, std::shared_ptr<const CoefficientSystem> system)
    : inner_(std::move(inner)), system_(std::move(system))
{
}

Complex DeltaImageFamily::evaluate(std::span<const Complex> points, const ModeLabel& label) const
{
    if (points.empty())
        throw DomainError("a coboundary image has no 0-point values");
    return apply_delta(static_cast<int>(points.size()) - 1, *inner_, *system_, points, label).value;
}

} // namespace weierkit
