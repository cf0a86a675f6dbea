#pragma once

#include <complex>
#include <string>
#include <vector>

namespace ellkzb {

struct CheckResult {
    std::string name;
    bool pass = false;
    double deviation = 0.0;  // numeric checks only
    double tol = 0.0;
    std::string detail;
};

// Exact structural checks: flatness, gauge coherence, singularity data,
// scaling invariance, special-function tables.
std::vector<CheckResult> run_symbolic_suite(int degree);

// Identity checks at the fixed sample points (|q| <= 0.1 throughout).
// tol_override replaces every per-identity tolerance when positive.
std::vector<CheckResult> run_numeric_suite(double tol_override = 0.0);

// Acceptance criteria 6: the gauge solver at one fiber.
std::vector<CheckResult> run_gauge_suite(long u0_num, long v0_num, int degree);

bool all_pass(const std::vector<CheckResult>& r);

}  // namespace ellkzb
