#pragma once

#include "sepscan/qstate.hpp"

namespace sepscan {

/// Subsystem radii of one sampled state plus its separability (PPT) verdict.
struct RadiusPair {
    double rA = 0.0;
    double rB = 0.0;
    bool separable = false;
};

/// Length of the Bloch vector of a qubit state, sqrt(2 Tr(rho^2) - 1).
double bloch_radius(const DensityMatrix& rho);

/// Normalized generalized Bloch radius of a d-level state,
/// sqrt((d Tr(rho^2) - 1) / (d - 1)).  Pure states map to 1 and the maximally
/// mixed state to 0, so the range is [0, 1] for every d and d = 2 reproduces
/// bloch_radius.
double generalized_bloch_radius(const DensityMatrix& rho);

/// Same normalization applied to a precomputed purity.
double radius_from_purity(double purity, int d);

/// Reduced states of an X state are diagonal: rA = |2(a+b) - 1|,
/// rB = |2(a+c) - 1|.
RadiusPair xstate_radii(const XStateParams& x);

}  // namespace sepscan
