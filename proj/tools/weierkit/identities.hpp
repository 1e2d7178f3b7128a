#pragma once

#include <string>
#include <vector>

#include "weierkit/config.hpp"

namespace weierkit::identities {

struct CheckResult {
    std::string name;
    bool passed = false;
    double residual = 0.0;
    double tolerance = 0.0;
};

struct SuiteResult {
    std::string suite;
    std::vector<CheckResult> checks;

    bool passed() const;
    double worst_residual() const;
};

struct SuiteOptions {
    /// Moduli to test at; each suite falls back to its own defaults when empty.
    std::vector<Complex> taus;
    ToleranceConfig cfg;
    unsigned seed = 20240611;
    /// Worker threads for independent cases; results are ordered by case regardless.
    unsigned threads = 0;
};

/// derivative-descent, laurent, eisenstein-anomaly, lambda-shift, quasi-jacobi,
/// twist-degeneration, genus0, genus2-conjugation, genus2-inversion,
/// genus2-degeneration, genusg-kernel, reduction-structure
const std::vector<std::string>& suite_names();

/// Throws DomainError for an unknown suite.
SuiteResult run_suite(const std::string& name, const SuiteOptions& options = {});

} // namespace weierkit::identities
