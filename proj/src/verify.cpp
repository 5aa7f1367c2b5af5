#include "fd6/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <sstream>

namespace fd6 {

namespace {

/// A row whose norm dips below this multiple of the solution magnitude sits
/// in rounding noise and gets flagged.
constexpr double plateau_factor = 1e3 * std::numeric_limits<double>::epsilon();

/// Uniform in [0, 1) from the top 53 bits of the engine word, so draws are
/// identical on every platform.
double unit_draw(std::mt19937_64& eng) {
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

double log_uniform(std::mt19937_64& eng, double lo, double hi) {
    return lo * std::pow(hi / lo, unit_draw(eng));
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void validate_mesh_list(const std::vector<int>& N_list) {
    if (N_list.empty())
        throw DomainError("N list must be nonempty");
    int prev = 0;
    for (int N : N_list) {
        if (N < 2)
            throw DomainError("every N in the list must be >= 2");
        if (N <= prev)
            throw DomainError("N list must be strictly ascending");
        prev = N;
    }
}

void attach_orders(ConvergenceReport& report) {
    for (std::size_t r = 1; r < report.rows.size(); ++r) {
        const double prev = report.rows[r - 1].norm;
        const double curr = report.rows[r].norm;
        if (prev > 0.0 && curr > 0.0)
            report.rows[r].order = std::log2(prev / curr);
    }
}

CaseTag tag_of(const ScaledCoefficients<double>& sc) {
    return sc.a_eps >= sc.b_eps ? CaseTag::AgeB : CaseTag::AleB;
}

GridFunction solve_leg(const ProblemSpec& problem, int N, double tol,
                       Method method) {
    try {
        return solve(assemble(problem, build_mesh(N)), tol, method).solution;
    } catch (const SolverError& e) {
        std::ostringstream os;
        os << "solve at N = " << N << " failed: " << e.what();
        throw SolverError(os.str(), e.best_residual());
    }
}

} // namespace

StructureReport check_structure(const ScaledCoefficients<double>& sc,
                                const std::vector<double>& h_samples) {
    if (h_samples.empty())
        throw DomainError("h_samples must be nonempty");
    for (double h : h_samples)
        if (!(h > 0.0))
            throw DomainError("h samples must be positive");

    const auto table = build_table(sc, tag_of(sc));
    StructureReport report;
    report.comparison_minimum = std::numeric_limits<double>::infinity();
    for (double h : h_samples) {
        const auto st = collapse(table, h);
        const double center = st.at(0, 0);
        double row_sum = 0.0;
        for (const auto& [k, l] : stencil_offsets)
            row_sum += st.at(k, l);
        const double scale = std::abs(center) > 0.0 ? std::abs(center) : 1.0;
        report.worst_row_sum =
            std::max(report.worst_row_sum, std::abs(row_sum) / scale);

        for (const auto& [k, l] : stencil_offsets) {
            const bool is_center = (k == 0 && l == 0);
            const double value = st.at(k, l);
            const bool violated = is_center ? !(value > 0.0) : value > 0.0;
            if (!violated)
                continue;
            ++report.sign_violations;
            const double magnitude = is_center ? -value : value;
            if (!report.worst_violation ||
                magnitude > report.worst_violation->magnitude)
                report.worst_violation =
                    SignViolation{k, l, h, sc.a_eps, sc.b_eps, magnitude};
        }

        report.comparison_minimum =
            std::min(report.comparison_minimum, comparison_bound(sc, h));
    }
    return report;
}

double comparison_bound(const ScaledCoefficients<double>& sc, double h,
                        int N) {
    if (!(h > 0.0))
        throw DomainError("comparison bound requires h > 0");
    if (N < 2)
        throw DomainError("comparison bound requires N >= 2 so interior "
                          "sample positions exist");
    const auto stencil = collapse(build_table(sc, tag_of(sc)), h);
    const auto theta = [&sc](double x, double y) {
        const double dx = x - sc.a_eps;
        const double dy = y - sc.b_eps;
        return dx * dx + dy * dy;
    };
    const double spacing = 1.0 / N;
    double minimum = std::numeric_limits<double>::infinity();
    for (int j = 1; j <= N - 1; ++j)
        for (int i = 1; i <= N - 1; ++i)
            minimum = std::min(
                minimum, -apply_stencil_at(stencil, theta, i * spacing,
                                           j * spacing));
    return minimum;
}

ConvergenceReport truncation_study(const DifferentiableField2D& u, double eps,
                                   double a, double b,
                                   const std::vector<int>& N_list) {
    validate_mesh_list(N_list);
    if (!(eps > 0.0) || !(a > 0.0) || !(b > 0.0))
        throw DomainError("eps, a, b must be positive");
    const ScaledCoefficients<double> sc(a / eps, b / eps);
    const CaseTag tag = tag_of(sc);
    const auto table = build_table(sc, tag);
    const DifferentiableField2D f_eps =
        manufactured_source(u, eps, a, b).scaled_by(1.0 / eps);

    ConvergenceReport report;
    report.kind = NormKind::ExactError;
    report.descriptor = "truncation u=" + u.base().str() + " eps=" + fmt(eps) +
                        " a=" + fmt(a) + " b=" + fmt(b);
    for (int N : N_list) {
        const Mesh mesh = build_mesh(N);
        const auto stencil = collapse(table, mesh.h);
        const auto samples = sample(mesh, u);
        double worst = 0.0;
        double source_scale = 0.0;
        for (int j = 1; j <= N - 1; ++j) {
            for (int i = 1; i <= N - 1; ++i) {
                const double F = rhs_value(
                    sc, tag, mesh.h,
                    f_eps.derivatives_at(mesh.x(i), mesh.y(j)));
                const double applied = apply_stencil(stencil, samples, i, j);
                worst = std::max(worst, std::abs(applied - F));
                source_scale = std::max(source_scale, std::abs(F));
            }
        }
        ConvergenceRow row;
        row.N = N;
        row.h = mesh.h;
        row.norm = worst;
        row.plateau = worst < plateau_factor * source_scale;
        report.rows.push_back(row);
    }
    attach_orders(report);
    return report;
}

ConvergenceReport richardson_study(const ProblemSpec& problem,
                                   const std::vector<int>& N_list,
                                   double tol, Method method) {
    validate_mesh_list(N_list);
    if (N_list.size() < 2)
        throw DomainError("a nested-grid study needs at least two N values");
    for (std::size_t r = 1; r < N_list.size(); ++r)
        if (N_list[r] != 2 * N_list[r - 1])
            throw DomainError(
                "each N must double its predecessor so grids nest");

    ConvergenceReport report;
    report.kind = NormKind::RichardsonDiff;
    report.descriptor = "richardson eps=" + fmt(problem.eps) +
                        " a=" + fmt(problem.a) + " b=" + fmt(problem.b) +
                        " f=" + problem.f.base().str() +
                        " g=" + problem.g.base().str();

    GridFunction coarse = solve_leg(problem, N_list[0], tol, method);
    for (std::size_t r = 1; r < N_list.size(); ++r) {
        const int N = N_list[r - 1];
        GridFunction fine = solve_leg(problem, N_list[r], tol, method);
        double diff = 0.0;
        for (int j = 0; j <= N; ++j)
            for (int i = 0; i <= N; ++i)
                diff = std::max(diff,
                                std::abs(coarse(i, j) - fine(2 * i, 2 * j)));
        const double magnitude =
            std::max(coarse.values().lpNorm<Eigen::Infinity>(),
                     fine.values().lpNorm<Eigen::Infinity>());
        ConvergenceRow row;
        row.N = N;
        row.h = 1.0 / N;
        row.norm = diff;
        row.plateau = diff < plateau_factor * magnitude;
        report.rows.push_back(row);
        coarse = std::move(fine);
    }
    attach_orders(report);
    return report;
}

ConvergenceReport mms_study(const DifferentiableField2D& u, double eps,
                            double a, double b, const std::vector<int>& N_list,
                            double tol, Method method) {
    validate_mesh_list(N_list);
    const ProblemSpec problem{eps, a, b, manufactured_source(u, eps, a, b),
                              u};

    ConvergenceReport report;
    report.kind = NormKind::ExactError;
    report.descriptor = "mms u=" + u.base().str() + " eps=" + fmt(eps) +
                        " a=" + fmt(a) + " b=" + fmt(b);
    for (int N : N_list) {
        const Mesh mesh = build_mesh(N);
        const GridFunction u_h = solve_leg(problem, N, tol, method);
        double err = 0.0;
        for (int j = 0; j <= N; ++j)
            for (int i = 0; i <= N; ++i)
                err = std::max(err,
                               std::abs(u(mesh.x(i), mesh.y(j)) - u_h(i, j)));
        ConvergenceRow row;
        row.N = N;
        row.h = mesh.h;
        row.norm = err;
        row.plateau =
            err < plateau_factor * u_h.values().lpNorm<Eigen::Infinity>();
        report.rows.push_back(row);
    }
    attach_orders(report);
    return report;
}

StructureReport structure_sweep(int draws, std::uint64_t seed, double ab_lo,
                                double ab_hi, double h_lo, double h_hi) {
    if (draws < 1)
        throw DomainError("sweep needs at least one draw");
    if (!(ab_lo >= 1.0) || !(ab_hi >= ab_lo) || !(h_lo > 0.0) ||
        !(h_hi >= h_lo))
        throw DomainError("sweep ranges must satisfy 1 <= ab_lo <= ab_hi and "
                          "0 < h_lo <= h_hi");
    std::mt19937_64 eng(seed);
    StructureReport merged;
    merged.comparison_minimum = std::numeric_limits<double>::infinity();
    for (int d = 0; d < draws; ++d) {
        const double a_eps = log_uniform(eng, ab_lo, ab_hi);
        const double b_eps = log_uniform(eng, ab_lo, ab_hi);
        const double h = log_uniform(eng, h_lo, h_hi);
        merged.merge(check_structure(ScaledCoefficients<double>(a_eps, b_eps),
                                     {h}));
    }
    return merged;
}

double unit_load_minimum(int N, int draws, std::uint64_t seed) {
    if (draws < 1)
        throw DomainError("probe needs at least one draw");
    std::mt19937_64 eng(seed);
    const Mesh mesh = build_mesh(N);
    const DifferentiableField2D zero("0");
    double minimum = std::numeric_limits<double>::infinity();
    for (int d = 0; d < draws; ++d) {
        const double a_eps = log_uniform(eng, 1.0, 100.0);
        const double b_eps = log_uniform(eng, 1.0, 100.0);
        SparseSystem sys =
            assemble(ProblemSpec{1.0, a_eps, b_eps, zero, zero}, mesh);
        const int k = static_cast<int>(
            eng() % static_cast<std::uint64_t>(sys.dimension()));
        sys.rhs.setZero();
        sys.rhs[k] = 1.0;
        const GridFunction u = solve(sys).solution;
        minimum = std::min(minimum, u.values().minCoeff());
    }
    return minimum;
}

double max_principle_excess(int N, int draws, std::uint64_t seed) {
    if (draws < 1)
        throw DomainError("probe needs at least one draw");
    std::mt19937_64 eng(seed);
    const Mesh mesh = build_mesh(N);
    const DifferentiableField2D zero("0");
    const double inv_h2 = 1.0 / (mesh.h * mesh.h);
    double worst = -std::numeric_limits<double>::infinity();
    for (int d = 0; d < draws; ++d) {
        const double a_eps = log_uniform(eng, 1.0, 100.0);
        const double b_eps = log_uniform(eng, 1.0, 100.0);
        const ScaledCoefficients<double> sc(a_eps, b_eps);
        SparseSystem sys =
            assemble(ProblemSpec{1.0, a_eps, b_eps, zero, zero}, mesh);

        double boundary_max = -std::numeric_limits<double>::infinity();
        for (int j = 0; j <= N; ++j)
            for (int i = 0; i <= N; ++i) {
                if (i != 0 && i != N && j != 0 && j != N)
                    continue;
                sys.boundary(i, j) = 2.0 * unit_draw(eng) - 1.0;
                boundary_max = std::max(boundary_max, sys.boundary(i, j));
            }

        // Right-hand side = boundary lift plus a source forced negative
        // enough that every assembled entry is <= 0.
        const auto st = collapse(build_table(sc, tag_of(sc)), mesh.h);
        for (int j = 1; j <= N - 1; ++j)
            for (int i = 1; i <= N - 1; ++i) {
                double lift = 0.0;
                for (const auto& [k, l] : stencil_offsets) {
                    const int ni = i + k;
                    const int nj = j + l;
                    if (ni == 0 || ni == N || nj == 0 || nj == N)
                        lift -= st.at(k, l) * inv_h2 * sys.boundary(ni, nj);
                }
                const double source =
                    -unit_draw(eng) - std::max(0.0, lift);
                sys.rhs[sys.row_of(i, j)] = source + lift;
            }

        const GridFunction u = solve(sys).solution;
        double interior_max = -std::numeric_limits<double>::infinity();
        for (int j = 1; j <= N - 1; ++j)
            for (int i = 1; i <= N - 1; ++i)
                interior_max = std::max(interior_max, u(i, j));
        worst = std::max(worst, interior_max - boundary_max);
    }
    return worst;
}

double comparison_sweep(int draws, std::uint64_t seed,
                        const std::vector<double>& h_list, double ab_lo,
                        double ab_hi, int N) {
    if (draws < 1)
        throw DomainError("sweep needs at least one draw");
    if (h_list.empty())
        throw DomainError("h_list must be nonempty");
    std::mt19937_64 eng(seed);
    double minimum = std::numeric_limits<double>::infinity();
    for (int d = 0; d < draws; ++d) {
        const double a_eps = log_uniform(eng, ab_lo, ab_hi);
        const double b_eps = log_uniform(eng, ab_lo, ab_hi);
        const ScaledCoefficients<double> sc(a_eps, b_eps);
        for (double h : h_list)
            minimum = std::min(minimum, comparison_bound(sc, h, N));
    }
    return minimum;
}

} // namespace fd6
