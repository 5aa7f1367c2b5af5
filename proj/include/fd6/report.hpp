#pragma once

/// @file report.hpp
/// Result records for convergence studies and structural checks, with
/// deterministic CSV and JSON renderings (and JSON loaders that reproduce
/// the in-memory records exactly).

#include <optional>
#include <string>
#include <vector>

namespace fd6 {

/// What a study row's norm measures: the difference between solutions on
/// nested grids at coincident nodes, or the error against a known exact
/// solution.
enum class NormKind { RichardsonDiff, ExactError };

std::string to_string(NormKind kind);
NormKind norm_kind_from_string(const std::string& text);

/// One study row. `order` is log2(previous norm / this norm) and is absent
/// on the first row (and whenever a zero norm makes the ratio meaningless).
/// `plateau` flags rows whose norm fell below 1000 * machine epsilon *
/// solution magnitude — informational, never a failure; it appears in the
/// JSON rendering only.
struct ConvergenceRow {
    int N = 0;
    double h = 0.0;
    double norm = 0.0;
    std::optional<double> order{};
    bool plateau = false;
};

struct ConvergenceReport {
    NormKind kind = NormKind::RichardsonDiff;
    std::string descriptor;
    std::vector<ConvergenceRow> rows;
};

/// The sign pattern's worst offender across a sweep: the offset (k, l)
/// whose collapsed coefficient violated its sign condition, and the sample
/// (h, a_eps, b_eps) where it happened.
struct SignViolation {
    int k = 0;
    int l = 0;
    double h = 0.0;
    double a_eps = 0.0;
    double b_eps = 0.0;
    double magnitude = 0.0;
};

/// Aggregated structural evidence: worst row-sum residual (relative to the
/// center coefficient), count of sign violations with the worst offender
/// if any, and the smallest comparison-function value seen.
struct StructureReport {
    double worst_row_sum = 0.0;
    long long sign_violations = 0;
    std::optional<SignViolation> worst_violation{};
    double comparison_minimum = 0.0;

    /// Combine evidence from two sweeps.
    void merge(const StructureReport& other);
};

/// CSV with header "N,h,norm,order"; norms use 6 significant digits in
/// scientific notation, orders 2 decimals (blank where absent), h full
/// precision.
std::string to_csv(const ConvergenceReport& report);

/// Key-value CSV with header "field,value".
std::string to_csv(const StructureReport& report);

/// Full-precision JSON (numbers round-trip bitwise through the loaders).
std::string to_json_string(const ConvergenceReport& report);
std::string to_json_string(const StructureReport& report);

ConvergenceReport convergence_report_from_json_string(const std::string& text);
StructureReport structure_report_from_json_string(const std::string& text);

} // namespace fd6
