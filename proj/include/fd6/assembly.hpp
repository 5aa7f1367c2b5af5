#pragma once

/// @file assembly.hpp
/// From a continuous problem and a mesh to the sparse linear system:
/// Dirichlet elimination of boundary neighbors, one compact 9-point row per
/// interior node, and application of a collapsed stencil to grid functions
/// or closed-form fields.

#include <Eigen/Sparse>
#include <optional>

#include "fd6/field.hpp"
#include "fd6/grid.hpp"
#include "fd6/stencil.hpp"

namespace fd6 {

/// The continuous problem -eps*(u_xx + u_yy) + a*u_x + b*u_y = f on the
/// unit square with Dirichlet boundary data g. The discretization acts on
/// the scaled form (a/eps, b/eps, f/eps), which is where the monotone
/// structure lives; `allow_scaled_below_one` downgrades the a/eps >= 1,
/// b/eps >= 1 requirement to a warning, and `forced_case` overrides the
/// orientation dispatch (useful for probing the two coefficient tables).
struct ProblemSpec {
    double eps;
    double a;
    double b;
    DifferentiableField2D f;
    DifferentiableField2D g;
    std::optional<CaseTag> forced_case{};
    bool allow_scaled_below_one = false;

    /// Validates eps, a, b > 0 and constructs the scaled coefficients
    /// (which enforce or warn about the >= 1 bounds).
    ScaledCoefficients<double> scaled() const;

    /// The orientation in effect: forced, or selected from the scaled
    /// coefficients with ties going to CaseAgeB.
    CaseTag case_tag() const;
};

/// The assembled linear system over interior nodes, in compressed sparse
/// row layout with interior node (i, j) mapped to row (j-1)*(N-1)+(i-1).
/// Each row holds at most 9 entries: a positive diagonal and nonpositive
/// off-diagonals. The sampled boundary data rides along so a solve can
/// return a complete grid function.
struct SparseSystem {
    int N = 0;
    double h = 0.0;
    CaseTag case_tag = CaseTag::AgeB;
    Eigen::SparseMatrix<double, Eigen::RowMajor> A;
    Eigen::VectorXd rhs;
    GridFunction boundary;

    int dimension() const noexcept { return (N - 1) * (N - 1); }

    int row_of(int i, int j) const {
        if (i < 1 || i > N - 1 || j < 1 || j > N - 1) {
            std::ostringstream os;
            os << "interior node (" << i << ", " << j
               << ") outside 1..=" << (N - 1);
            throw DomainError(os.str());
        }
        return (j - 1) * (N - 1) + (i - 1);
    }
};

/// Assemble the system: row entries are C_{k,l}/h^2 for interior neighbors;
/// the right-hand side carries the scheme's source value minus the
/// Dirichlet lift of boundary neighbors. Field evaluation failures are
/// rethrown with the offending node's coordinates attached.
SparseSystem assemble(const ProblemSpec& problem, const Mesh& mesh);

/// (1/h^2) * sum_{k,l} C_{k,l} v_{i+k, j+l} for an interior node, using the
/// stencil's own h and the grid's stored values. Requires 1 <= i, j <= N-1.
template <class Scalar>
Scalar apply_stencil(const CompactStencil<Scalar>& stencil,
                     const GridFunctionT<Scalar>& v, int i, int j) {
    const int N = v.N();
    if (i < 1 || i > N - 1 || j < 1 || j > N - 1) {
        std::ostringstream os;
        os << "stencil application at (" << i << ", " << j
           << ") needs an interior node of the 0..=" << N << " grid";
        throw DomainError(os.str());
    }
    Scalar acc(0);
    for (const auto& [k, l] : stencil_offsets)
        acc += stencil.at(k, l) * v(i + k, j + l);
    return acc / (stencil.h * stencil.h);
}

/// Same combination with neighbor samples taken from a callable at the
/// stencil's own spacing: (1/h^2) * sum C_{k,l} * field(x + k*h, y + l*h).
/// This is the form used when h is decoupled from any mesh.
template <class Scalar, class F>
Scalar apply_stencil_at(const CompactStencil<Scalar>& stencil, F&& field,
                        const Scalar& x, const Scalar& y) {
    Scalar acc(0);
    for (const auto& [k, l] : stencil_offsets)
        acc += stencil.at(k, l) *
               field(x + Scalar(k) * stencil.h, y + Scalar(l) * stencil.h);
    return acc / (stencil.h * stencil.h);
}

} // namespace fd6
