#include "qcharmlab/types.hpp"

#include <algorithm>

namespace qcharmlab {

std::vector<double> clustered_radii(int n, double max_r) {
    // sin mapping of a uniform grid: spacing shrinks toward |z| = 1 where
    // dilatation and barrier extremes live.
    std::vector<double> radii(n);
    for (int i = 0; i < n; ++i) {
        double u = (i + 0.5) / n;
        radii[i] = max_r * std::sin(0.5 * std::numbers::pi * u);
    }
    return radii;
}

}  // namespace qcharmlab
