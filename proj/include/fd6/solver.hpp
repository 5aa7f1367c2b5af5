#pragma once

/// @file solver.hpp
/// Solving the assembled system to a certified residual tolerance: banded
/// LU without pivoting (safe for M-matrices) plus iterative refinement as
/// the default, and a forward Gauss-Seidel sweep as the low-memory
/// fallback for very large grids.

#include "fd6/assembly.hpp"

namespace fd6 {

/// Solution strategy. Auto picks DirectBanded for N <= 512 and
/// StationaryIterative above that (banded storage grows like 2*N^3 doubles,
/// which passes 2 GiB just beyond N = 512).
enum class Method { DirectBanded, StationaryIterative, Auto };

std::string to_string(Method method);

/// Default residual tolerance: keeps solver error far below the smallest
/// discretization differences the convergence studies resolve (~1e-10).
inline constexpr double default_solve_tol = 1e-13;

/// Upper bound on Gauss-Seidel sweeps before giving up.
inline constexpr int sweep_cap = 1000000;

/// Result of a solve. `solution` covers the full grid: boundary values are
/// copied from the system's sampled boundary data, interior values come
/// from the linear solve. `relative_residual` is measured against
/// ||rhs||_inf, or taken as the absolute residual when rhs = 0.
/// `iterations` counts stationary sweeps and is 0 for the direct method.
struct SolveReport {
    GridFunction solution;
    double relative_residual = 0.0;
    Method method = Method::DirectBanded;
    int iterations = 0;
};

/// Solve A u = rhs to ||A u - rhs||_inf / ||rhs||_inf <= tol (absolute when
/// rhs = 0). tol must lie in [1e-15, 1e-6]. Throws SolverError when the
/// sweep cap is reached or a zero pivot appears (the latter cannot happen
/// for an intact M-matrix, so it signals a broken invariant upstream).
SolveReport solve(const SparseSystem& system, double tol = default_solve_tol,
                  Method method = Method::Auto);

/// Absolute residual ||A u_interior - rhs||_inf of a candidate grid
/// function. Requires u to live on the same grid as the system.
double residual_norm(const SparseSystem& system, const GridFunction& u);

} // namespace fd6
