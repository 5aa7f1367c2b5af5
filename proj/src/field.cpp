#include "fd6/field.hpp"

#include <sstream>

namespace fd6 {

const Expression& DifferentiableField2D::partial(int m, int n) const {
    if (m < 0 || n < 0 || m + n > 8) {
        std::ostringstream os;
        os << "partial derivative order (" << m << ", " << n
           << ") outside the supported range m, n >= 0, m + n <= 8";
        throw DomainError(os.str());
    }
    const auto key = std::make_pair(m, n);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    Expression result = (m == 0 && n == 0) ? base_
                        : (m > 0) ? partial(m - 1, n).derivative_x()
                                  : partial(m, n - 1).derivative_y();
    return cache_.emplace(key, std::move(result)).first->second;
}

SourceDerivatives<double> DifferentiableField2D::derivatives_at(
    double x, double y) const {
    SourceDerivatives<double> table;
    for (int m = 0; m <= 4; ++m)
        for (int n = 0; m + n <= 4; ++n)
            table.set(m, n, evaluate_partial(m, n, x, y));
    return table;
}

DifferentiableField2D manufactured_source(const DifferentiableField2D& u,
                                          double eps, double a, double b) {
    if (!(eps > 0.0) || !(a > 0.0) || !(b > 0.0)) {
        std::ostringstream os;
        os << "manufactured_source requires eps, a, b > 0; got eps = " << eps
           << ", a = " << a << ", b = " << b;
        throw DomainError(os.str());
    }
    const Expression laplacian = u.partial(2, 0) + u.partial(0, 2);
    const Expression f = constant(-eps) * laplacian +
                         constant(a) * u.partial(1, 0) +
                         constant(b) * u.partial(0, 1);
    return DifferentiableField2D(f);
}

} // namespace fd6
