#pragma once

#include "sepscan/polynomial.hpp"

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace sepscan {

/// Bivariate function given by one rational expression on rA > rB and
/// another on rA < rB, times a constant transcendental scale (pi^2 for the
/// X-state volumes).  On rA = rB the common limit is used, computed as the
/// restriction of the upper piece to the diagonal with common factors
/// cancelled, so 0/0 points such as (1, 1) of a probability ratio resolve.
class PiecewiseSurface {
public:
    /// Throws Discontinuous if the pieces disagree on the diagonal, or if
    /// `printed_diagonal` is given and differs from the common limit.
    PiecewiseSurface(std::string name, RationalFunction2 upper, RationalFunction2 lower, double scale = 1.0,
                     std::optional<RationalFunction1> printed_diagonal = std::nullopt);

    /// Symmetric surface: the lower piece is the upper one with rA, rB swapped.
    static PiecewiseSurface symmetric(std::string name, RationalFunction2 upper, double scale = 1.0,
                                      std::optional<RationalFunction1> printed_diagonal = std::nullopt);

    const std::string& name() const { return name_; }
    const RationalFunction2& upper() const { return upper_; }
    const RationalFunction2& lower() const { return lower_; }
    const RationalFunction1& diagonal() const { return diagonal_; }
    double scale() const { return scale_; }
    bool is_symmetric() const { return symmetric_; }

    /// Copy that throws DomainError off the diagonal when rA or rB is 0.
    PiecewiseSurface open_at_zero() const;

    double operator()(double rA, double rB) const;
    /// Value without the transcendental scale, in exact arithmetic.
    Rational exact(const Rational& rA, const Rational& rB) const;

    /// Restriction to the segment (fa(t), fb(t)) using the piece selected
    /// by `upper_piece`.
    RationalFunction1 along(const Poly1& fa, const Poly1& fb, bool upper_piece) const;

    /// Ratio of two surfaces sharing the same region split.
    friend PiecewiseSurface operator/(const PiecewiseSurface& num, const PiecewiseSurface& den);

private:
    std::string name_;
    RationalFunction2 upper_;
    RationalFunction2 lower_;
    RationalFunction1 diagonal_;
    double scale_;
    bool symmetric_;
    bool open_at_zero_ = false;
};

struct CurvePiece {
    Rational lo;
    Rational hi;
    RationalFunction1 f;
};

/// Univariate function made of rational pieces on consecutive intervals,
/// with optional exact values pinned at points (the split values).
class PiecewiseCurve {
public:
    /// Pieces must tile [lo, hi] in order.  Throws Discontinuous when
    /// adjacent pieces (or a pinned value) disagree at a join beyond 1e-12.
    PiecewiseCurve(std::string name, std::vector<CurvePiece> pieces,
                   std::vector<std::pair<Rational, Rational>> special = {});
    /// Single expression on [lo, hi].
    static PiecewiseCurve single(std::string name, RationalFunction1 f, Rational lo = 0, Rational hi = 1);

    const std::string& name() const { return name_; }
    const std::vector<CurvePiece>& pieces() const { return pieces_; }
    const std::vector<std::pair<Rational, Rational>>& special_points() const { return special_; }
    Rational lo() const { return pieces_.front().lo; }
    Rational hi() const { return pieces_.back().hi; }

    double operator()(double x) const;
    Rational exact(const Rational& x) const;
    /// Sign of the exact value at x.
    int sign_at(const Rational& x) const;

    /// Pointwise difference on the common domain, split at every join of
    /// either operand.
    friend PiecewiseCurve operator-(const PiecewiseCurve& a, const PiecewiseCurve& b);

private:
    const CurvePiece& piece_for(const Rational& x) const;
    std::string name_;
    std::vector<CurvePiece> pieces_;
    std::vector<std::pair<Rational, Rational>> special_;
};

// ------------------------------------------------------------ X states, K=4

const PiecewiseSurface& x_total_surface();  ///< scale pi^2
const PiecewiseSurface& x_sep_surface();    ///< scale pi^2
/// Printed ratio form, symmetric, scale 1.
const PiecewiseSurface& x_prob_surface();

double x_total(double rA, double rB);
double x_sep(double rA, double rB);
double x_prob(double rA, double rB);
Rational x_prob(const Rational& rA, const Rational& rB);
/// Univariate marginal of x_total, pi^2 (1 - r^2)^3 / 2304.
double x_marginal(double r);

const PiecewiseCurve& x_diag_curve();
const PiecewiseCurve& x_antidiag_curve();
/// Section rB = 1/2.
const PiecewiseCurve& x_half_curve();
/// K = 5 X-state section rB = 1/2.
const PiecewiseCurve& xk5_half_curve();

double x_diag(double rA);
double x_antidiag(double rA);
double x_half(double rA);
double xk5_half(double rA);

// ----------------------------------------------------- named polynomials

/// 4r^5 + 5r^4 - 8r^3 - 14r^2 + 4r + 1: X-state K=4 lower crossover.
const Poly1& x_crossover_quintic();
/// Degree-8 X-state K=5 lower crossover polynomial.
const Poly1& xk5_crossover_octic();
/// 5100r^4 + 6885r^3 - 26711r^2 - 26340r + 18105: full K=3 crossover.
const Poly1& k3_crossover_quartic();
/// x_half = x_diag below 1/2.
const Poly1& half_diag_quintic();
/// x_half = x_antidiag below 1/2.
const Poly1& half_antidiag_sextic();

// ---------------------------------------------------------- root finding

struct RootEnclosure {
    Rational lo;
    Rational hi;
    double midpoint() const { return to_double((lo + hi) / 2); }
};

/// Exact-sign bisection.  Requires p(lo) p(hi) < 0 in exact arithmetic,
/// else throws NoSignChange.
RootEnclosure poly_root_enclosure(const Poly1& p, const Rational& lo, const Rational& hi, double tol = 1e-12);
double poly_root(const Poly1& p, double lo, double hi, double tol = 1e-12);

enum class Extremum { Max, Min };

struct ExtremumResult {
    double x;
    double value;
};

/// Global extremum on [lo, hi] among endpoints, piece joins and the zeros
/// of each piece's derivative numerator (located to 1e-13).
ExtremumResult curve_extremum(const PiecewiseCurve& c, double lo, double hi, Extremum mode);

/// Roots of c1 - c2 in the open interval (lo, hi): sign scan on a grid of
/// `grid` points, then exact-sign bisection to `tol`.
std::vector<double> intersect_curves(const PiecewiseCurve& c1, const PiecewiseCurve& c2, double lo, double hi,
                                     int grid = 10000, double tol = 1e-10);

// ------------------------------------------------------------- quadrature

using SurfaceFn = std::function<double(double, double)>;

/// Integral over [0,1]^2 split into the triangles rA > rB and rA < rB;
/// `upper` is integrated over the first and `lower` over the second.
/// Nested adaptive Gauss-Kronrod; throws ToleranceNotReached when the
/// absolute error estimate exceeds tol.
double integrate_surface(const SurfaceFn& upper, const SurfaceFn& lower, double tol = 1e-9);
double integrate_surface(const SurfaceFn& f, double tol = 1e-9);
double integrate_surface(const PiecewiseSurface& s, double tol = 1e-9);

struct CorrelationResult {
    /// Pearson correlation under the density normalized over the square.
    double pearson = 0.0;
    /// Correlation computed from moments of the unnormalized volume
    /// function: mu = int rA f, cov = int (rA - mu)(rB - mu) f, var alike.
    double unnormalized = 0.0;
    /// Closed form of the unnormalized-moment correlation, when known.
    std::optional<double> closed_form;
};

enum class VolumeFilter { All, Separable };

CorrelationResult surface_correlation(const SurfaceFn& upper, const SurfaceFn& lower, double tol = 1e-11);
CorrelationResult x_correlation(VolumeFilter filter, double tol = 1e-11);

}  // namespace sepscan
