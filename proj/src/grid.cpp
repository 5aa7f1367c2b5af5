#include "fd6/grid.hpp"

#include <cstdio>
#include <ostream>

namespace fd6 {

void dump(const GridFunction& u, std::ostream& out) {
    const int N = u.N();
    const double h = 1.0 / N;
    char line[96];
    for (int j = 0; j <= N; ++j) {
        for (int i = 0; i <= N; ++i) {
            const int len =
                std::snprintf(line, sizeof line, "%.17g %.17g %.17g\n",
                              i * h, j * h, u(i, j));
            out.write(line, len);
        }
    }
}

} // namespace fd6
