#include "sepscan/radii.hpp"

#include "sepscan/error.hpp"

#include <algorithm>
#include <cmath>

namespace sepscan {

double radius_from_purity(double purity, int d) {
    if (d < 2) throw Error(ErrorKind::WrongDim, "generalized Bloch radius needs d >= 2, got " + std::to_string(d));
    const double r2 = (d * purity - 1.0) / (d - 1.0);
    // round-off can push near-mixed states slightly below 0 and pure ones above 1
    return std::min(1.0, std::sqrt(std::max(0.0, r2)));
}

double bloch_radius(const DensityMatrix& rho) {
    if (rho.dim() != 2) throw Error(ErrorKind::WrongDim, "Bloch radius needs a qubit, got dim " + std::to_string(rho.dim()));
    return radius_from_purity(purity(rho), 2);
}

double generalized_bloch_radius(const DensityMatrix& rho) { return radius_from_purity(purity(rho), rho.dim()); }

RadiusPair xstate_radii(const XStateParams& x) {
    return {std::abs(2.0 * (x.a + x.b) - 1.0), std::abs(2.0 * (x.a + x.c) - 1.0), xstate_is_separable(x)};
}

}  // namespace sepscan
