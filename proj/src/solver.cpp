#include "fd6/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace fd6 {

namespace {

using SparseRowIt = Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator;

/// Residuals are accumulated in extended precision so the reported value
/// reflects the returned solution rather than evaluation noise, and so
/// refinement corrections carry genuine information.
Eigen::VectorXd residual_vector(const SparseSystem& sys,
                                const Eigen::VectorXd& x) {
    const int n = sys.dimension();
    Eigen::VectorXd r(n);
    for (int row = 0; row < n; ++row) {
        long double acc = static_cast<long double>(sys.rhs[row]);
        for (SparseRowIt it(sys.A, row); it; ++it)
            acc -= static_cast<long double>(it.value()) *
                   static_cast<long double>(x[it.col()]);
        r[row] = static_cast<double>(acc);
    }
    return r;
}

double absolute_residual(const SparseSystem& sys, const Eigen::VectorXd& x) {
    return residual_vector(sys, x).lpNorm<Eigen::Infinity>();
}

/// The residual measure the tolerance applies to: relative to ||rhs||_inf,
/// or absolute when rhs = 0.
double to_measure(double abs_residual, double rhs_norm) {
    return rhs_norm > 0.0 ? abs_residual / rhs_norm : abs_residual;
}

double matrix_inf_norm(const SparseSystem& sys) {
    double worst = 0.0;
    for (int row = 0; row < sys.dimension(); ++row) {
        double sum = 0.0;
        for (SparseRowIt it(sys.A, row); it; ++it)
            sum += std::abs(it.value());
        worst = std::max(worst, sum);
    }
    return worst;
}

/// Normwise backward error ||A x - rhs|| / (||A|| ||x|| + ||rhs||). A double
/// solution vector cannot push the plain relative residual below roughly
/// machine-epsilon * ||A|| ||x|| / ||rhs|| (rounding x alone costs that
/// much), so when a tolerance sits under that floor, backward stability is
/// the honest certificate that the solve cannot be improved.
double backward_error(const SparseSystem& sys, const Eigen::VectorXd& x,
                      double abs_residual, double matrix_norm) {
    const double denom = matrix_norm * x.lpNorm<Eigen::Infinity>() +
                         sys.rhs.lpNorm<Eigen::Infinity>();
    return abs_residual / std::max(denom, std::numeric_limits<double>::min());
}

constexpr double backward_stable_threshold =
    64.0 * std::numeric_limits<double>::epsilon();

/// Band storage for LU without pivoting: column-major (2*bw+1) x n with
/// A(r, c) at AB(bw + r - c, c). After factor_banded, the unit-lower
/// multipliers sit below the diagonal row and U on and above it.
Eigen::MatrixXd band_storage(const SparseSystem& sys, int bw) {
    const int n = sys.dimension();
    Eigen::MatrixXd AB = Eigen::MatrixXd::Zero(2 * bw + 1, n);
    for (int row = 0; row < n; ++row)
        for (SparseRowIt it(sys.A, row); it; ++it)
            AB(bw + row - it.col(), it.col()) = it.value();
    return AB;
}

void factor_banded(Eigen::MatrixXd& AB, int n, int bw) {
    const Eigen::Index ld = AB.rows();
    double* base = AB.data();
    for (int k = 0; k < n; ++k) {
        double* colk = base + static_cast<Eigen::Index>(k) * ld;
        const double pivot = colk[bw];
        if (pivot == 0.0) {
            std::ostringstream os;
            os << "zero pivot at elimination column " << k
               << "; the assembled matrix should be an M-matrix, so this "
                  "indicates a broken invariant upstream";
            throw SolverError(os.str(),
                              std::numeric_limits<double>::infinity());
        }
        const int m = std::min(bw, n - 1 - k);
        for (int t = 1; t <= m; ++t)
            colk[bw + t] /= pivot;
        for (int d = 1; d <= m; ++d) {
            double* colc = base + static_cast<Eigen::Index>(k + d) * ld;
            const double ukc = colc[bw - d];
            if (ukc == 0.0)
                continue;
            double* dst = colc + (bw - d);
            for (int t = 1; t <= m; ++t)
                dst[t] -= colk[bw + t] * ukc;
        }
    }
}

/// In-place solve of LU x = b with the factors from factor_banded.
void substitute_banded(const Eigen::MatrixXd& AB, int n, int bw,
                       Eigen::VectorXd& x) {
    const Eigen::Index ld = AB.rows();
    const double* base = AB.data();
    for (int k = 0; k < n; ++k) {
        const double xk = x[k];
        if (xk == 0.0)
            continue;
        const double* colk = base + static_cast<Eigen::Index>(k) * ld;
        const int m = std::min(bw, n - 1 - k);
        for (int t = 1; t <= m; ++t)
            x[k + t] -= colk[bw + t] * xk;
    }
    for (int k = n - 1; k >= 0; --k) {
        const double* colk = base + static_cast<Eigen::Index>(k) * ld;
        x[k] /= colk[bw];
        const double xk = x[k];
        if (xk == 0.0)
            continue;
        const int m = std::min(bw, k);
        for (int t = 1; t <= m; ++t)
            x[k - t] -= colk[bw - t] * xk;
    }
}

/// Banded LU with iterative refinement. Succeeds when the residual measure
/// reaches tol, or when refinement has stalled at a backward-stable
/// solution (the representability floor sits above tol).
Eigen::VectorXd solve_direct(const SparseSystem& sys, double tol,
                             double rhs_norm, double& measure_out) {
    const int n = sys.dimension();
    // Interior rows are numbered (j-1)*(N-1)+(i-1), so the farthest
    // coupled neighbor (i+1, j+1) sits N places away: bandwidth N.
    const int bw = std::min(sys.N, n - 1 > 0 ? n - 1 : 0);
    Eigen::MatrixXd AB = band_storage(sys, bw);
    factor_banded(AB, n, bw);

    Eigen::VectorXd x = sys.rhs;
    substitute_banded(AB, n, bw, x);
    double measure = to_measure(absolute_residual(sys, x), rhs_norm);

    Eigen::VectorXd best = x;
    double best_measure = measure;
    for (int step = 0; step < 5 && measure > tol; ++step) {
        Eigen::VectorXd correction = residual_vector(sys, x);
        substitute_banded(AB, n, bw, correction);
        x += correction;
        measure = to_measure(absolute_residual(sys, x), rhs_norm);
        if (measure < best_measure) {
            best_measure = measure;
            best = x;
        }
    }
    if (best_measure > tol) {
        const double abs_residual =
            rhs_norm > 0.0 ? best_measure * rhs_norm : best_measure;
        const double eta =
            backward_error(sys, best, abs_residual, matrix_inf_norm(sys));
        if (eta > backward_stable_threshold) {
            std::ostringstream os;
            os << "direct solve stalled at residual " << best_measure
               << " (backward error " << eta << ") short of tolerance "
               << tol;
            throw SolverError(os.str(), best_measure);
        }
    }
    measure_out = best_measure;
    return best;
}

/// Forward Gauss-Seidel in natural row order (ascending j, then i), which
/// sweeps downstream for positive convection coefficients. Convergent for
/// M-matrices. Succeeds at the residual tolerance, or at a backward-stable
/// solution once sweeps stop making headway.
Eigen::VectorXd solve_sweeps(const SparseSystem& sys, double tol,
                             double rhs_norm, double& measure_out,
                             int& sweeps_out) {
    const int n = sys.dimension();
    Eigen::VectorXd diag(n);
    for (int row = 0; row < n; ++row) {
        const double d = sys.A.coeff(row, row);
        if (d == 0.0)
            throw SolverError(
                "zero diagonal entry in the assembled matrix; it should be "
                "an M-matrix, so this indicates a broken invariant upstream",
                std::numeric_limits<double>::infinity());
        diag[row] = d;
    }
    const double matrix_norm = matrix_inf_norm(sys);

    Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
    double best_abs = absolute_residual(sys, x);
    if (to_measure(best_abs, rhs_norm) <= tol) {
        measure_out = to_measure(best_abs, rhs_norm);
        sweeps_out = 0;
        return x;
    }
    Eigen::VectorXd best = x;
    int sweeps_since_gain = 0;
    for (int sweep = 1; sweep <= sweep_cap; ++sweep) {
        for (int row = 0; row < n; ++row) {
            double s = sys.rhs[row];
            for (SparseRowIt it(sys.A, row); it; ++it)
                s -= it.value() * x[it.col()];
            x[row] += s / diag[row];
        }
        const double abs_residual = absolute_residual(sys, x);
        if (to_measure(abs_residual, rhs_norm) <= tol) {
            measure_out = to_measure(abs_residual, rhs_norm);
            sweeps_out = sweep;
            return x;
        }
        if (abs_residual < best_abs * 0.999)
            sweeps_since_gain = 0;
        else
            ++sweeps_since_gain;
        if (abs_residual < best_abs) {
            best_abs = abs_residual;
            best = x;
        }
        // No meaningful progress for a stretch: accept a backward-stable
        // iterate (the tolerance sits below what double precision can
        // express); otherwise keep sweeping toward the cap.
        if (sweeps_since_gain >= 25) {
            sweeps_since_gain = 0;
            if (backward_error(sys, best, best_abs, matrix_norm) <=
                backward_stable_threshold) {
                measure_out = to_measure(best_abs, rhs_norm);
                sweeps_out = sweep;
                return best;
            }
        }
    }
    std::ostringstream os;
    const double best_measure = to_measure(best_abs, rhs_norm);
    os << "stationary sweeps did not reach tolerance " << tol << " within "
       << sweep_cap << " sweeps; best residual " << best_measure;
    throw SolverError(os.str(), best_measure);
}

} // namespace

std::string to_string(Method method) {
    switch (method) {
    case Method::DirectBanded:
        return "direct-banded";
    case Method::StationaryIterative:
        return "stationary-iterative";
    case Method::Auto:
        return "auto";
    }
    throw ContractViolation("unknown method enumerator");
}

SolveReport solve(const SparseSystem& system, double tol, Method method) {
    if (!(tol >= 1e-15 && tol <= 1e-6)) {
        std::ostringstream os;
        os << "solver tolerance " << tol << " outside [1e-15, 1e-6]";
        throw DomainError(os.str());
    }
    if (system.N < 2 || system.A.rows() != system.dimension() ||
        system.rhs.size() != system.dimension())
        throw DomainError("system is not assembled");

    Method resolved = method;
    if (resolved == Method::Auto)
        resolved = system.N <= 512 ? Method::DirectBanded
                                   : Method::StationaryIterative;

    const double rhs_norm = system.rhs.lpNorm<Eigen::Infinity>();
    double measure = 0.0;
    int sweeps = 0;
    Eigen::VectorXd x;
    if (resolved == Method::DirectBanded)
        x = solve_direct(system, tol, rhs_norm, measure);
    else
        x = solve_sweeps(system, tol, rhs_norm, measure, sweeps);

    SolveReport report;
    report.method = resolved;
    report.iterations = sweeps;
    report.relative_residual = measure;
    report.solution = system.boundary;
    const int N = system.N;
    for (int j = 1; j <= N - 1; ++j)
        for (int i = 1; i <= N - 1; ++i)
            report.solution(i, j) = x[system.row_of(i, j)];
    return report;
}

double residual_norm(const SparseSystem& system, const GridFunction& u) {
    if (u.N() != system.N) {
        std::ostringstream os;
        os << "grid function on an N = " << u.N()
           << " grid does not match a system assembled for N = " << system.N;
        throw DomainError(os.str());
    }
    const int N = system.N;
    Eigen::VectorXd x(system.dimension());
    for (int j = 1; j <= N - 1; ++j)
        for (int i = 1; i <= N - 1; ++i)
            x[system.row_of(i, j)] = u(i, j);
    return absolute_residual(system, x);
}

} // namespace fd6

