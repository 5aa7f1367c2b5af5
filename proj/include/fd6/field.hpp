#pragma once

/// @file field.hpp
/// A scalar field on [0,1]^2 given in closed form, with exact symbolic
/// mixed partials cached per order. This is what the discretization
/// consumes: source terms enter through their derivative table at each
/// node, and manufactured solutions expose the partials needed for
/// truncation and convergence studies.

#include <map>
#include <utility>

#include "fd6/expression.hpp"
#include "fd6/stencil.hpp"

namespace fd6 {

class DifferentiableField2D {
public:
    explicit DifferentiableField2D(Expression base)
        : base_(std::move(base)) {}

    /// Parse-and-wrap convenience.
    explicit DifferentiableField2D(const std::string& text)
        : base_(parse(text)) {}

    const Expression& base() const noexcept { return base_; }

    /// The mixed partial of order m in x and n in y (m, n >= 0,
    /// m + n <= 8), computed symbolically once and cached. Mixed partials
    /// are order-independent, so building along any path gives the same
    /// function.
    const Expression& partial(int m, int n) const;

    double operator()(double x, double y) const { return base_(x, y); }

    double evaluate_partial(int m, int n, double x, double y) const {
        return partial(m, n)(x, y);
    }

    /// The field multiplied by a constant (used to pass from a raw source
    /// to the scaled source f/eps).
    DifferentiableField2D scaled_by(double factor) const {
        return DifferentiableField2D(constant(factor) * base_);
    }

    /// All mixed partials of total order <= 4 evaluated at one point, in
    /// the layout the discretization's right-hand side consumes.
    SourceDerivatives<double> derivatives_at(double x, double y) const;

private:
    Expression base_;
    mutable std::map<std::pair<int, int>, Expression> cache_;
};

/// The source term that makes `u` the exact solution of
/// -eps*(u_xx + u_yy) + a*u_x + b*u_y = f. All three parameters must be
/// positive.
DifferentiableField2D manufactured_source(const DifferentiableField2D& u,
                                          double eps, double a, double b);

} // namespace fd6
