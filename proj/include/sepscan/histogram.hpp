#pragma once

#include "sepscan/radii.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

namespace sepscan {

enum class Axis { A, B };

/// Paired nbins x nbins count matrices over binned (rA, rB).  Bin i covers
/// [i, i+1) * scale / nbins and is attributed its midpoint; r = scale falls
/// into the top bin.  Storage is row-major with rows indexed by the rA bin.
class JointRadialHistogram {
public:
    explicit JointRadialHistogram(int nbins = 100, double radius_scale = 1.0);

    /// Rebuilds a histogram from raw count matrices (row-major, nbins^2 each).
    static JointRadialHistogram from_counts(int nbins, double radius_scale, std::vector<std::uint64_t> total,
                                            std::vector<std::uint64_t> separable);

    int nbins() const { return nbins_; }
    double radius_scale() const { return scale_; }

    /// Throws OutOfRange for radii outside [0, radius_scale].
    void accumulate(const RadiusPair& p);
    int bin_of(double r) const;
    double midpoint(int i) const { return (i + 0.5) * scale_ / nbins_; }

    std::uint64_t total(int i, int j) const { return total_[index(i, j)]; }
    std::uint64_t separable(int i, int j) const { return separable_[index(i, j)]; }
    const std::vector<std::uint64_t>& total_counts() const { return total_; }
    const std::vector<std::uint64_t>& separable_counts() const { return separable_; }
    std::uint64_t grand_total() const;
    std::uint64_t grand_separable() const;

    /// Separable fraction of one bin; empty when the bin has no samples.
    std::optional<double> probability(int i, int j) const;

    friend bool operator==(const JointRadialHistogram&, const JointRadialHistogram&) = default;

private:
    std::size_t index(int i, int j) const { return static_cast<std::size_t>(i) * nbins_ + j; }
    int nbins_;
    double scale_;
    std::vector<std::uint64_t> total_;
    std::vector<std::uint64_t> separable_;
};

/// Entrywise sum.  Throws ShapeMismatch unless nbins and scale agree.
JointRadialHistogram merge(const JointRadialHistogram& h1, const JointRadialHistogram& h2);

/// A one-dimensional section of the probability matrix.  Points with zero
/// total count keep an empty probability.
struct CurveEstimate {
    std::vector<double> abscissae;
    std::vector<std::optional<double>> probabilities;
    std::vector<std::uint64_t> counts;
    std::vector<std::uint64_t> separable_counts;

    std::size_t size() const { return abscissae.size(); }
    void push(double x, std::uint64_t sep, std::uint64_t tot);
};

/// Bins (i, i).
CurveEstimate diagonal_curve(const JointRadialHistogram& h);
/// Bins (i, nbins-1-i), so midpoints satisfy rA + rB = scale.  The abscissa
/// is the rA midpoint for Axis::A and the rB midpoint for Axis::B (the
/// latter is p(1 - rB, rB) read along rB).
CurveEstimate antidiagonal_curve(const JointRadialHistogram& h, Axis abscissa = Axis::A);
/// Bins (i, j) for fixed j; j = nbins/2 is the rB = 1/2 section.
CurveEstimate column_curve(const JointRadialHistogram& h, int j);
/// Bins (i, round(c*nbins) - 1 - i) for i where that column exists.
CurveEstimate quasi_antidiagonal_curve(const JointRadialHistogram& h, double offset);
/// Antidiagonal with bins (i, n-1-i) and (n-1-i, i) pooled.  Only meaningful
/// for measures symmetric under exchange of the subsystems.
CurveEstimate pooled_antidiagonal_curve(const JointRadialHistogram& h);

struct Marginal {
    std::vector<std::uint64_t> total;
    std::vector<std::uint64_t> separable;
    std::vector<std::optional<double>> ratio;
};

/// Counts per bin of `axis`, summed over the other radius.
Marginal marginal(const JointRadialHistogram& h, Axis axis);

/// Slope of log(marginal density) against log(1 - r^2) over bins whose
/// midpoints lie in [lo, hi].  Counts are divided by the bin integral of
/// r^jacobian_power (the surface factor of the Bloch-vector space: 0 for
/// X states, 1 for rebits, 2 for qubits).
double marginal_exponent(const JointRadialHistogram& h, Axis axis, int jacobian_power, double lo = 0.05,
                         double hi = 0.9);

/// Largest root below 1/2 of the linear interpolation of (anti - diag) over
/// abscissae present and defined in both curves.  Throws NoCrossing.
double estimate_crossover(const CurveEstimate& diag, const CurveEstimate& anti);

struct CrossoverFitOptions {
    /// Lower end of the searched range of r.
    double window_lo = 0.2;
    /// Total degree of the fitted surface.
    int degree = 5;
    /// Half-width of the bands of bins kept around both lines.
    double band = 0.3;
    std::uint64_t min_count = 1;
};

struct CrossoverFit {
    double root = 0.0;
    double standard_error = 0.0;
    double reduced_chi2 = 0.0;
    int points = 0;
};

/// Smoothed estimator for exchange-symmetric histograms.  The binned
/// probability is fitted (iteratively reweighted binomial least squares) by
/// a polynomial of total degree `degree` in s - 1 and d, s = rA + rB,
/// d = |rA - rB|, using the bins within `band` of the diagonal (for
/// s >= 2 window_lo) or of the antidiagonal.  The fitted curves
/// f(2r, 0) and f(1, 1 - 2r) meet at r = 1/2 by construction; the returned
/// root is the crossing closest to 1/2 from below, with a delta-method
/// standard error.  Throws NoCrossing if the antidiagonal dominates just
/// below 1/2 or the diagonal dominates on all of [window_lo, 1/2), and
/// InsufficientData if fewer bins than coefficients are populated.
CrossoverFit fit_crossover(const JointRadialHistogram& h, const CrossoverFitOptions& opts = {});

/// Mergeable one-pass co-moment accumulator (Chan et al. pairwise update).
class CorrelationAccumulator {
public:
    void add(double x, double y);
    void merge(const CorrelationAccumulator& other);
    std::uint64_t count() const { return n_; }
    /// Throws InsufficientData for fewer than 2 samples or zero variance.
    double pearson() const;

private:
    std::uint64_t n_ = 0;
    double mean_x_ = 0.0, mean_y_ = 0.0;
    double m2x_ = 0.0, m2y_ = 0.0, cxy_ = 0.0;
};

enum class SampleFilter { All, Separable };

double sample_correlation(std::span<const RadiusPair> samples, SampleFilter filter);

/// Spearman rank correlation with average ranks for ties.
double spearman(std::span<const double> x, std::span<const double> y);

// CSV exchange: nbins rows of nbins comma-separated integers.
void write_counts_csv(std::ostream& os, const JointRadialHistogram& h, bool separable);
std::vector<std::uint64_t> read_counts_csv(std::istream& is, int& nbins);
/// Header "midpoint,probability,count"; undefined probabilities are empty.
void write_curve_csv(std::ostream& os, const CurveEstimate& c);

}  // namespace sepscan
