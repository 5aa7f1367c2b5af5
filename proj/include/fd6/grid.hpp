#pragma once

/// @file grid.hpp
/// The uniform node set on the unit square and values attached to it.

#include <Eigen/Dense>
#include <iosfwd>
#include <sstream>

#include "fd6/errors.hpp"

namespace fd6 {

/// Uniform (N+1) x (N+1) node set on [0,1]^2 with spacing h = 1/N and node
/// coordinates x_i = i*h, y_j = j*h (computed by multiplication, never by
/// cumulative addition).
struct Mesh {
    int N;
    double h;

    double x(int i) const noexcept { return i * h; }
    double y(int j) const noexcept { return j * h; }
    int node_count() const noexcept { return (N + 1) * (N + 1); }
    int interior_count() const noexcept { return (N - 1) * (N - 1); }
};

/// N >= 2 so at least one interior node exists.
inline Mesh build_mesh(int N) {
    if (N < 2) {
        std::ostringstream os;
        os << "mesh requires N >= 2 (got N = " << N
           << "); N < 2 has no interior nodes";
        throw DomainError(os.str());
    }
    return Mesh{N, 1.0 / N};
}

/// Values on the full node set, boundary included. Storage is row-major
/// with index j*(N+1)+i, i fastest.
template <class Scalar = double>
class GridFunctionT {
public:
    using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

    GridFunctionT() : N_(1), values_(Vector::Zero(4)) {}

    explicit GridFunctionT(int N) {
        if (N < 1) {
            std::ostringstream os;
            os << "grid function requires N >= 1 (got N = " << N << ")";
            throw DomainError(os.str());
        }
        N_ = N;
        values_ = Vector::Zero((N + 1) * (N + 1));
    }

    int N() const noexcept { return N_; }
    double h() const noexcept { return 1.0 / N_; }

    int index(int i, int j) const {
        if (i < 0 || i > N_ || j < 0 || j > N_) {
            std::ostringstream os;
            os << "node index (" << i << ", " << j
               << ") outside the grid 0..=" << N_;
            throw DomainError(os.str());
        }
        return j * (N_ + 1) + i;
    }

    Scalar& operator()(int i, int j) { return values_[index(i, j)]; }
    const Scalar& operator()(int i, int j) const {
        return values_[index(i, j)];
    }

    Vector& values() noexcept { return values_; }
    const Vector& values() const noexcept { return values_; }

private:
    int N_;
    Vector values_;
};

using GridFunction = GridFunctionT<double>;

/// Evaluate a callable (x, y) -> value at every node.
template <class F>
GridFunction sample(const Mesh& mesh, F&& fn) {
    GridFunction u(mesh.N);
    for (int j = 0; j <= mesh.N; ++j)
        for (int i = 0; i <= mesh.N; ++i)
            u(i, j) = fn(mesh.x(i), mesh.y(j));
    return u;
}

/// Plain-text dump: one "x y value" line per node, row-major, 17
/// significant digits.
void dump(const GridFunction& u, std::ostream& out);

} // namespace fd6
