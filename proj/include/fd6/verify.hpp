#pragma once

/// @file verify.hpp
/// The testable structural and convergence claims: sign/row-sum checks
/// across parameter sweeps, the comparison-function lower bound, truncation
/// order estimation, nested-grid (Richardson) convergence studies, and
/// manufactured-solution studies with exact errors.

#include <cstdint>

#include "fd6/report.hpp"
#include "fd6/solver.hpp"

namespace fd6 {

/// Evaluate the collapsed stencil at every h sample: the center coefficient
/// must be positive and every off-center coefficient nonpositive; row sums
/// are reported relative to the center coefficient. Also records the
/// comparison-function minimum across the samples (interior nodes of an
/// N = 64 grid). h_samples must be nonempty and positive.
StructureReport check_structure(const ScaledCoefficients<double>& sc,
                                const std::vector<double>& h_samples);

/// Minimum over the interior nodes (x_i, y_j) of an N-grid of the negated
/// stencil application to theta(x, y) = (x - a_eps)^2 + (y - b_eps)^2,
/// sampled at the stencil's own spacing h around each node. h is a free
/// positive parameter, decoupled from N. The monotone structure guarantees
/// a value >= 24.
double comparison_bound(const ScaledCoefficients<double>& sc, double h,
                        int N = 64);

/// Max over interior nodes of |stencil applied to u-samples minus the
/// scheme's source value| for f = manufactured_source(u, eps, a, b), per N;
/// successive orders attached. Sixth-order consistency shows as slope 6.
ConvergenceReport truncation_study(const DifferentiableField2D& u, double eps,
                                   double a, double b,
                                   const std::vector<int>& N_list);

/// Solve every N in an ascending, doubling N_list and difference adjacent
/// solutions at coincident nodes: row N holds
/// max_{0<=i,j<=N} |u_N(i,j) - u_2N(2i,2j)|. Solver failures are rethrown
/// naming the offending N.
ConvergenceReport richardson_study(const ProblemSpec& problem,
                                   const std::vector<int>& N_list,
                                   double tol = default_solve_tol,
                                   Method method = Method::Auto);

/// Manufactured-solution study: f = manufactured_source(u, eps, a, b),
/// boundary data g = u, error = max over all nodes of |u - u_h|.
ConvergenceReport mms_study(const DifferentiableField2D& u, double eps,
                            double a, double b, const std::vector<int>& N_list,
                            double tol = default_solve_tol,
                            Method method = Method::Auto);

/// Random structural sweep: `draws` log-uniform samples of
/// (a_eps, b_eps) in [ab_lo, ab_hi]^2 and h in [h_lo, h_hi], each checked
/// via check_structure and merged. Deterministic for a fixed seed.
StructureReport structure_sweep(int draws, std::uint64_t seed,
                                double ab_lo = 1.0, double ab_hi = 1e4,
                                double h_lo = 1e-6, double h_hi = 1e3);

/// Random comparison-bound sweep: `draws` log-uniform (a_eps, b_eps) in
/// [ab_lo, ab_hi]^2, each evaluated at every h in h_list on an N-grid;
/// returns the overall minimum. Deterministic for a fixed seed.
double comparison_sweep(int draws, std::uint64_t seed,
                        const std::vector<double>& h_list, double ab_lo = 1.0,
                        double ab_hi = 50.0, int N = 64);

/// Inverse-nonnegativity probe: for `draws` random coefficient pairs, solve
/// with a unit load at a random interior node (g = 0) and return the
/// smallest solution value seen anywhere. A true M-matrix inverse keeps
/// this above roughly -1e-14.
double unit_load_minimum(int N, int draws, std::uint64_t seed);

/// Maximum-principle probe: for `draws` random coefficient pairs and random
/// boundary data, force the assembled right-hand side entrywise <= 0 and
/// return the worst excess of the interior maximum over the boundary
/// maximum. Should not exceed roundoff (~1e-12).
double max_principle_excess(int N, int draws, std::uint64_t seed);

} // namespace fd6
