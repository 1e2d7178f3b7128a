#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "weierkit/config.hpp"

namespace weierkit {

/// T_{k,l,m}: slot k (0 = zero mode), channel l, mode m.
struct OperatorIndex {
    int k = 0;
    int l = 1;
    int m = 0;

    friend auto operator<=>(const OperatorIndex&, const OperatorIndex&) = default;
};

/// Word of operators applied to the base moduli label, first applied first.
using ModeLabel = std::vector<OperatorIndex>;

std::string to_string(const ModeLabel& label);

enum class Kind { rational, elliptic, twisted, jacobi, jacobi_degenerate, multiparameter, genus2, genusg };

std::string to_string(Kind kind);
/// Throws DomainError for unknown names. Accepts "jacobi-degenerate".
Kind kind_from_string(const std::string& name);

struct Action {
    ModeLabel label;
    Complex weight{1.0, 0.0};
};

/// An n-point function family Z(z_1..z_n; mu) together with the action of the mode
/// operators T_{k,l,m} on its moduli label.
class Family {
public:
    Family() = default;
    /// Copies carry no lock state.
    Family(const Family&) {}
    Family& operator=(const Family&) { return *this; }
    virtual ~Family() = default;

    virtual Kind kind() const = 0;
    virtual Complex evaluate(std::span<const Complex> points, const ModeLabel& label) const = 0;

    /// T_{k,l,m} Z(points; label) = weight * Z(points; new label). Appends by default.
    virtual Action act(const OperatorIndex& op, std::span<const Complex> points, const ModeLabel& label) const;

    /// Largest mode index with possibly non-zero data, if known.
    virtual std::optional<int> mode_bound() const { return std::nullopt; }

    /// Families returning false are only ever called under their own lock.
    virtual bool concurrency_safe() const { return true; }

    /// evaluate() under the family lock when needed.
    Complex guarded_evaluate(std::span<const Complex> points, const ModeLabel& label) const;
    Action guarded_act(const OperatorIndex& op, std::span<const Complex> points, const ModeLabel& label) const;

private:
    mutable std::mutex mutex_;
};

/// Point-independent table of values keyed by label word.
class TableFamily final : public Family {
public:
    struct Entry {
        ModeLabel label;
        std::optional<int> n; ///< restrict to this many points
        Complex value;
    };

    TableFamily(Kind kind, int n_max, std::vector<Entry> entries);

    /// {kind, n_max, entries: [{labels: [k,l,m, k,l,m, ...], value: [re, im], n?}]}
    static TableFamily from_json(const std::string& text);
    static TableFamily from_file(const std::string& path);

    Kind kind() const override { return kind_; }
    Complex evaluate(std::span<const Complex> points, const ModeLabel& label) const override;
    std::optional<int> mode_bound() const override { return mode_bound_; }

    int n_max() const { return n_max_; }
    const std::vector<Entry>& entries() const { return entries_; }

private:
    Kind kind_;
    int n_max_;
    std::vector<Entry> entries_;
    std::map<ModeLabel, std::vector<std::size_t>> index_;
    std::optional<int> mode_bound_;
};

/// Family defined by a callable.
class FunctionFamily final : public Family {
public:
    using Fn = std::function<Complex(std::span<const Complex>, const ModeLabel&)>;

    FunctionFamily(Kind kind, Fn fn, std::optional<int> mode_bound = std::nullopt, bool concurrency_safe = true);

    Kind kind() const override { return kind_; }
    Complex evaluate(std::span<const Complex> points, const ModeLabel& label) const override;
    std::optional<int> mode_bound() const override { return bound_; }
    bool concurrency_safe() const override { return safe_; }

private:
    Kind kind_;
    Fn fn_;
    std::optional<int> bound_;
    bool safe_;
};

/// sum_i c_i F_i. Members must use the default appending act().
class LinearCombinationFamily final : public Family {
public:
    LinearCombinationFamily(std::vector<std::pair<Complex, std::shared_ptr<const Family>>> terms);

    Kind kind() const override { return kind_; }
    Complex evaluate(std::span<const Complex> points, const ModeLabel& label) const override;
    std::optional<int> mode_bound() const override;
    bool concurrency_safe() const override;

private:
    Kind kind_;
    std::vector<std::pair<Complex, std::shared_ptr<const Family>>> terms_;
};

/// Identically zero.
class ZeroFamily final : public Family {
public:
    explicit ZeroFamily(Kind kind) : kind_(kind) {}
    Kind kind() const override { return kind_; }
    Complex evaluate(std::span<const Complex>, const ModeLabel&) const override { return 0.0; }
    std::optional<int> mode_bound() const override { return 0; }

private:
    Kind kind_;
};

} // namespace weierkit
