#pragma once

// Candidate (fitted) formulas for the full two-qubit K = 3, 4, 5 induced
// measures, and binned goodness-of-fit against Monte Carlo curves.

#include "sepscan/closedform.hpp"
#include "sepscan/histogram.hpp"

#include <functional>
#include <string>
#include <vector>

namespace sepscan {

// K = 3.  Volumes normalized so that the total is 1 at (1/2, 1/2).
const PiecewiseSurface& k3_total_surface();
/// Off-diagonal pieces with the named S and T sub-polynomials; on the
/// diagonal the printed (rA - 1)^6 (rA^2 + 6 rA + 1), verified to be the
/// limit of the pieces.
const PiecewiseSurface& k3_sep_surface();
/// k3_sep / k3_total.
const PiecewiseSurface& k3_prob_surface();
/// S(rB) and T(rB) of the off-diagonal separable piece.
const Poly1& k3_sep_S();
const Poly1& k3_sep_T();

/// Both throw DomainError when rA = 0 or rB = 0 off the diagonal.
double k3_total(double rA, double rB);
double k3_sep(double rA, double rB);

const PiecewiseCurve& k3_diag_curve();
const PiecewiseCurve& k3_antidiag_curve();
double k3_diag(double rA);
double k3_antidiag(double rA);

// K = 4 and K = 5 diagonal curves and their diagonal volume formulas.
const PiecewiseCurve& k4_diag_curve();
/// Empirical decimal-coefficient fit on [0, 1/2], mirrored r -> 1 - r on [1/2, 1].
const PiecewiseCurve& k4_antidiag_curve();
const PiecewiseCurve& k5_diag_curve();
double k4_diag(double rA);
double k4_antidiag(double rA);
double k5_diag(double rA);

struct DiagonalVolumes {
    RationalFunction1 total;
    RationalFunction1 separable;
};
/// Printed diagonal total and separable volumes for K = 4 or 5.
const DiagonalVolumes& diagonal_volumes(int K);

struct FitReport {
    std::string formula;
    bool empirical = false;
    std::vector<double> abscissae;  ///< bins used
    std::vector<double> residuals;  ///< observed - predicted
    double statistic = 0.0;
    int dof = 0;
    int skipped = 0;  ///< undefined or below min_count
    double reduced() const { return dof > 0 ? statistic / dof : 0.0; }
};

/// Sum over used bins of (p_hat - f(mid))^2 / max(p_hat(1 - p_hat)/n, 1/(4 n^2)).
/// Bins with no samples or fewer than min_count are skipped.  Throws NoData
/// if no bin remains.
FitReport chi_squared(const std::function<double(double)>& f, const CurveEstimate& data, std::uint64_t min_count = 1,
                      std::string formula = "custom", bool empirical = false);
FitReport chi_squared(const PiecewiseCurve& f, const CurveEstimate& data, std::uint64_t min_count = 1);

}  // namespace sepscan
