#include "fd6/assembly.hpp"

#include <sstream>
#include <vector>

namespace fd6 {

namespace {

[[noreturn]] void rethrow_at_node(const EvalError& e, int i, int j, double x,
                                  double y, const char* what_failed) {
    std::ostringstream os;
    os << what_failed << " at node (" << i << ", " << j << "), (x, y) = ("
       << x << ", " << y << "): " << e.what();
    throw EvalError(os.str());
}

} // namespace

ScaledCoefficients<double> ProblemSpec::scaled() const {
    if (!(eps > 0.0))
        throw DomainError("eps must be positive");
    if (!(a > 0.0))
        throw DomainError("a must be positive");
    if (!(b > 0.0))
        throw DomainError("b must be positive");
    return ScaledCoefficients<double>(a / eps, b / eps,
                                      allow_scaled_below_one);
}

CaseTag ProblemSpec::case_tag() const {
    const auto sc = scaled();
    if (forced_case)
        return *forced_case;
    return sc.a_eps >= sc.b_eps ? CaseTag::AgeB : CaseTag::AleB;
}

SparseSystem assemble(const ProblemSpec& problem, const Mesh& mesh) {
    const auto sc = problem.scaled();
    const CaseTag tag = problem.forced_case ? *problem.forced_case
                        : sc.a_eps >= sc.b_eps ? CaseTag::AgeB
                                               : CaseTag::AleB;
    const auto table =
        build_table(sc, tag, /*force=*/problem.forced_case.has_value());
    const auto stencil = collapse(table, mesh.h);

    const DifferentiableField2D f_eps =
        problem.f.scaled_by(1.0 / problem.eps);

    SparseSystem sys;
    sys.N = mesh.N;
    sys.h = mesh.h;
    sys.case_tag = tag;
    sys.boundary = GridFunction(mesh.N);

    const int N = mesh.N;
    const double h = mesh.h;
    const double inv_h2 = 1.0 / (h * h);

    // Boundary data lives on the frame of the grid; interior slots stay 0.
    for (int i = 0; i <= N; ++i) {
        for (int j = 0; j <= N; ++j) {
            if (i != 0 && i != N && j != 0 && j != N)
                continue;
            const double x = mesh.x(i);
            const double y = mesh.y(j);
            try {
                sys.boundary(i, j) = problem.g(x, y);
            } catch (const EvalError& e) {
                rethrow_at_node(e, i, j, x, y, "boundary data evaluation");
            }
        }
    }

    const int n = sys.dimension();
    sys.rhs = Eigen::VectorXd::Zero(n);
    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(static_cast<std::size_t>(n) * 9);

    for (int j = 1; j <= N - 1; ++j) {
        for (int i = 1; i <= N - 1; ++i) {
            const int row = sys.row_of(i, j);
            const double x = mesh.x(i);
            const double y = mesh.y(j);

            SourceDerivatives<double> fd;
            try {
                fd = f_eps.derivatives_at(x, y);
            } catch (const EvalError& e) {
                rethrow_at_node(e, i, j, x, y, "source evaluation");
            }
            sys.rhs[row] = rhs_value(sc, tag, h, fd);

            for (const auto& [k, l] : stencil_offsets) {
                const int ni = i + k;
                const int nj = j + l;
                const double entry = stencil.at(k, l) * inv_h2;
                if (ni >= 1 && ni <= N - 1 && nj >= 1 && nj <= N - 1) {
                    triplets.emplace_back(row, sys.row_of(ni, nj), entry);
                } else {
                    sys.rhs[row] -= entry * sys.boundary(ni, nj);
                }
            }
        }
    }

    sys.A.resize(n, n);
    sys.A.setFromTriplets(triplets.begin(), triplets.end());
    sys.A.makeCompressed();
    return sys;
}

} // namespace fd6
