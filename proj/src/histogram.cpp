#include "sepscan/histogram.hpp"

#include "sepscan/error.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>

namespace sepscan {

JointRadialHistogram::JointRadialHistogram(int nbins, double radius_scale)
    : nbins_(nbins), scale_(radius_scale) {
    if (nbins < 1) throw Error(ErrorKind::ShapeMismatch, "nbins must be positive");
    if (!(radius_scale > 0.0)) throw Error(ErrorKind::ShapeMismatch, "radius scale must be positive");
    total_.assign(static_cast<std::size_t>(nbins) * nbins, 0);
    separable_.assign(total_.size(), 0);
}

JointRadialHistogram JointRadialHistogram::from_counts(int nbins, double radius_scale, std::vector<std::uint64_t> total,
                                                       std::vector<std::uint64_t> separable) {
    JointRadialHistogram h(nbins, radius_scale);
    if (total.size() != h.total_.size() || separable.size() != h.total_.size())
        throw Error(ErrorKind::ShapeMismatch, "count matrices must be nbins x nbins");
    for (std::size_t k = 0; k < total.size(); ++k)
        if (separable[k] > total[k])
            throw Error(ErrorKind::OutOfRange, "separable count exceeds total in bin " + std::to_string(k));
    h.total_ = std::move(total);
    h.separable_ = std::move(separable);
    return h;
}

int JointRadialHistogram::bin_of(double r) const {
    if (!(r >= 0.0 && r <= scale_)) throw Error(ErrorKind::OutOfRange, "radius " + std::to_string(r) + " outside [0, scale]");
    const int i = static_cast<int>(std::floor(nbins_ * r / scale_));
    return std::clamp(i, 0, nbins_ - 1);
}

void JointRadialHistogram::accumulate(const RadiusPair& p) {
    const std::size_t k = index(bin_of(p.rA), bin_of(p.rB));
    ++total_[k];
    if (p.separable) ++separable_[k];
}

std::uint64_t JointRadialHistogram::grand_total() const { return std::accumulate(total_.begin(), total_.end(), std::uint64_t{0}); }

std::uint64_t JointRadialHistogram::grand_separable() const {
    return std::accumulate(separable_.begin(), separable_.end(), std::uint64_t{0});
}

std::optional<double> JointRadialHistogram::probability(int i, int j) const {
    const auto t = total(i, j);
    if (t == 0) return std::nullopt;
    return static_cast<double>(separable(i, j)) / static_cast<double>(t);
}

JointRadialHistogram merge(const JointRadialHistogram& h1, const JointRadialHistogram& h2) {
    if (h1.nbins() != h2.nbins() || h1.radius_scale() != h2.radius_scale())
        throw Error(ErrorKind::ShapeMismatch, "histograms differ in nbins or radius scale");
    std::vector<std::uint64_t> tot = h1.total_counts();
    std::vector<std::uint64_t> sep = h1.separable_counts();
    for (std::size_t k = 0; k < tot.size(); ++k) {
        tot[k] += h2.total_counts()[k];
        sep[k] += h2.separable_counts()[k];
    }
    return JointRadialHistogram::from_counts(h1.nbins(), h1.radius_scale(), std::move(tot), std::move(sep));
}

// ------------------------------------------------------------------ curves

void CurveEstimate::push(double x, std::uint64_t sep, std::uint64_t tot) {
    abscissae.push_back(x);
    counts.push_back(tot);
    separable_counts.push_back(sep);
    if (tot == 0) {
        probabilities.emplace_back();
    } else {
        probabilities.emplace_back(static_cast<double>(sep) / static_cast<double>(tot));
    }
}

CurveEstimate diagonal_curve(const JointRadialHistogram& h) {
    CurveEstimate c;
    for (int i = 0; i < h.nbins(); ++i) c.push(h.midpoint(i), h.separable(i, i), h.total(i, i));
    return c;
}

CurveEstimate antidiagonal_curve(const JointRadialHistogram& h, Axis abscissa) {
    const int n = h.nbins();
    CurveEstimate c;
    for (int k = 0; k < n; ++k) {
        // k indexes the abscissa bin; the other radius takes the mirrored bin
        const int i = abscissa == Axis::A ? k : n - 1 - k;
        const int j = n - 1 - i;
        c.push(h.midpoint(k), h.separable(i, j), h.total(i, j));
    }
    return c;
}

CurveEstimate column_curve(const JointRadialHistogram& h, int j) {
    if (j < 0 || j >= h.nbins()) throw Error(ErrorKind::OutOfRange, "column " + std::to_string(j));
    CurveEstimate c;
    for (int i = 0; i < h.nbins(); ++i) c.push(h.midpoint(i), h.separable(i, j), h.total(i, j));
    return c;
}

CurveEstimate quasi_antidiagonal_curve(const JointRadialHistogram& h, double offset) {
    const int n = h.nbins();
    const int last = static_cast<int>(std::lround(offset * n)) - 1;
    CurveEstimate c;
    for (int i = 0; i < n; ++i) {
        const int j = last - i;
        if (j < 0 || j >= n) continue;
        c.push(h.midpoint(i), h.separable(i, j), h.total(i, j));
    }
    return c;
}

CurveEstimate pooled_antidiagonal_curve(const JointRadialHistogram& h) {
    const int n = h.nbins();
    CurveEstimate c;
    for (int i = 0; i < n; ++i) {
        const int j = n - 1 - i;
        std::uint64_t tot = h.total(i, j);
        std::uint64_t sep = h.separable(i, j);
        if (i != j) {
            tot += h.total(j, i);
            sep += h.separable(j, i);
        }
        c.push(h.midpoint(i), sep, tot);
    }
    return c;
}

// --------------------------------------------------------------- marginals

Marginal marginal(const JointRadialHistogram& h, Axis axis) {
    const int n = h.nbins();
    Marginal m;
    m.total.assign(n, 0);
    m.separable.assign(n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const int k = axis == Axis::A ? i : j;
            m.total[k] += h.total(i, j);
            m.separable[k] += h.separable(i, j);
        }
    for (int k = 0; k < n; ++k) {
        if (m.total[k] == 0) {
            m.ratio.emplace_back();
        } else {
            m.ratio.emplace_back(static_cast<double>(m.separable[k]) / static_cast<double>(m.total[k]));
        }
    }
    return m;
}

double marginal_exponent(const JointRadialHistogram& h, Axis axis, int jacobian_power, double lo, double hi) {
    const Marginal m = marginal(h, axis);
    const double w = h.radius_scale() / h.nbins();
    std::vector<double> xs, ys;
    for (int k = 0; k < h.nbins(); ++k) {
        const double mid = h.midpoint(k);
        if (mid < lo || mid > hi || m.total[k] == 0) continue;
        const double left = k * w;
        const double right = left + w;
        const int p = jacobian_power + 1;
        const double jac = (std::pow(right, p) - std::pow(left, p)) / p;
        xs.push_back(std::log(1.0 - mid * mid));
        ys.push_back(std::log(static_cast<double>(m.total[k]) / jac));
    }
    if (xs.size() < 2) throw Error(ErrorKind::InsufficientData, "fewer than two populated bins in regression window");
    const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
    const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / ys.size();
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        sxy += (xs[k] - mx) * (ys[k] - my);
        sxx += (xs[k] - mx) * (xs[k] - mx);
    }
    return sxy / sxx;
}

// --------------------------------------------------------------- crossover

namespace {

struct DiffPoint {
    double x;
    double diff;
    double var;
};

double binomial_variance(double p, std::uint64_t n) {
    const double nn = static_cast<double>(n);
    return std::max(p * (1.0 - p) / nn, 1.0 / (4.0 * nn * nn));
}

std::vector<DiffPoint> common_points(const CurveEstimate& diag, const CurveEstimate& anti, std::uint64_t min_count) {
    std::vector<DiffPoint> pts;
    for (std::size_t i = 0; i < diag.size(); ++i) {
        if (!diag.probabilities[i] || diag.counts[i] < min_count) continue;
        for (std::size_t j = 0; j < anti.size(); ++j) {
            if (std::abs(anti.abscissae[j] - diag.abscissae[i]) > 1e-12) continue;
            if (!anti.probabilities[j] || anti.counts[j] < min_count) break;
            const double pd = *diag.probabilities[i];
            const double pa = *anti.probabilities[j];
            pts.push_back({diag.abscissae[i], pa - pd,
                           binomial_variance(pd, diag.counts[i]) + binomial_variance(pa, anti.counts[j])});
            break;
        }
    }
    std::sort(pts.begin(), pts.end(), [](const DiffPoint& a, const DiffPoint& b) { return a.x < b.x; });
    return pts;
}

}  // namespace

double estimate_crossover(const CurveEstimate& diag, const CurveEstimate& anti) {
    const auto pts = common_points(diag, anti, 1);
    std::optional<double> best;
    for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
        const auto& p = pts[k];
        const auto& q = pts[k + 1];
        if (q.x >= 0.5) break;
        double root;
        if (p.diff == 0.0) {
            root = p.x;
        } else if ((p.diff < 0.0) != (q.diff < 0.0) && q.diff != 0.0) {
            root = p.x + (q.x - p.x) * p.diff / (p.diff - q.diff);
        } else if (q.diff == 0.0) {
            root = q.x;
        } else {
            continue;
        }
        if (root < 0.5 && (!best || root > *best)) best = root;
    }
    if (!best) throw Error(ErrorKind::NoCrossing, "anti - diag keeps one sign below 1/2");
    return *best;
}

CrossoverFit fit_crossover(const JointRadialHistogram& h, const CrossoverFitOptions& opts) {
    if (opts.degree < 1) throw Error(ErrorKind::InvalidSpec, "crossover fit degree must be positive");
    if (!(opts.window_lo >= 0.0 && opts.window_lo < 0.5) || !(opts.band > 0.0))
        throw Error(ErrorKind::InvalidSpec, "crossover fit window must satisfy 0 <= window_lo < 1/2, band > 0");

    std::vector<std::pair<int, int>> mono;
    for (int a = 0; a <= opts.degree; ++a)
        for (int b = 0; a + b <= opts.degree; ++b) mono.emplace_back(a, b);
    const Eigen::Index k = static_cast<Eigen::Index>(mono.size());

    struct Cell {
        double s, d, p, n;
    };
    std::vector<Cell> cells;
    double sep = 0.0, tot = 0.0;
    const int nb = h.nbins();
    const double scale = h.radius_scale();
    for (int i = 0; i < nb; ++i)
        for (int j = 0; j < nb; ++j) {
            const std::uint64_t n = h.total(i, j);
            if (n == 0 || n < opts.min_count) continue;
            const double s = (h.midpoint(i) + h.midpoint(j)) / scale;
            const double d = std::abs(h.midpoint(i) - h.midpoint(j)) / scale;
            const bool near_diag = d <= opts.band && s >= 2.0 * opts.window_lo && s <= 1.0 + opts.band;
            const bool near_anti = std::abs(s - 1.0) <= opts.band && d <= 1.0 - 2.0 * opts.window_lo + opts.band;
            if (!near_diag && !near_anti) continue;
            cells.push_back({s - 1.0, d, static_cast<double>(h.separable(i, j)) / static_cast<double>(n),
                             static_cast<double>(n)});
            sep += static_cast<double>(h.separable(i, j));
            tot += static_cast<double>(n);
        }
    const Eigen::Index m = static_cast<Eigen::Index>(cells.size());
    if (m <= k) throw Error(ErrorKind::InsufficientData, "too few populated bins for the crossover fit");

    auto basis = [&](double x, double d) {
        Eigen::VectorXd v(k);
        for (Eigen::Index c = 0; c < k; ++c) v(c) = std::pow(x, mono[c].first) * std::pow(d, mono[c].second);
        return v;
    };
    Eigen::MatrixXd B(m, k);
    for (Eigen::Index r = 0; r < m; ++r) B.row(r) = basis(cells[r].s, cells[r].d).transpose();

    const double pbar = std::clamp(sep / tot, 1e-3, 1.0 - 1e-3);
    Eigen::VectorXd coef;
    Eigen::MatrixXd X(m, k);
    Eigen::VectorXd y(m);
    for (int iter = 0; iter < 3; ++iter) {
        for (Eigen::Index r = 0; r < m; ++r) {
            const double pm = iter == 0 ? pbar : std::clamp(B.row(r).dot(coef), 1e-3, 1.0 - 1e-3);
            const double w = std::sqrt(cells[r].n / (pm * (1.0 - pm)));
            X.row(r) = w * B.row(r);
            y(r) = w * cells[r].p;
        }
        coef = X.colPivHouseholderQr().solve(y);
    }
    const double chi2 = (X * coef - y).squaredNorm();

    // anti - diag at r = 1/2 - u
    auto gradient = [&](double u) -> Eigen::VectorXd { return basis(0.0, 2.0 * u) - basis(-2.0 * u, 0.0); };
    auto diff = [&](double u) { return gradient(u).dot(coef); };

    const double umax = 0.5 - opts.window_lo;
    const int grid = 4000;
    double prev_u = 1e-3 * umax;
    if (diff(prev_u) >= 0.0) throw Error(ErrorKind::NoCrossing, "antidiagonal dominates immediately below 1/2");
    for (int g = 1; g <= grid; ++g) {
        const double u = prev_u + (umax - 1e-3 * umax) / grid;
        if (diff(u) >= 0.0) {
            double lo = prev_u, hi = u;
            for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
                const double mid = 0.5 * (lo + hi);
                (diff(mid) < 0.0 ? lo : hi) = mid;
            }
            const double ustar = 0.5 * (lo + hi);
            const double du = 1e-6;
            const double slope = (diff(ustar + du) - diff(ustar - du)) / (2.0 * du);
            const Eigen::VectorXd g_star = gradient(ustar) / slope;
            const Eigen::MatrixXd cov = (X.transpose() * X).inverse();
            CrossoverFit fit;
            fit.root = 0.5 - ustar;
            fit.standard_error = std::sqrt(std::max(0.0, g_star.dot(cov * g_star)));
            fit.points = static_cast<int>(m);
            fit.reduced_chi2 = chi2 / static_cast<double>(m - k);
            return fit;
        }
        prev_u = u;
    }
    throw Error(ErrorKind::NoCrossing, "diagonal dominates throughout the fit window");
}

// ------------------------------------------------------------- correlation

void CorrelationAccumulator::add(double x, double y) {
    ++n_;
    const double dx = x - mean_x_;
    mean_x_ += dx / static_cast<double>(n_);
    const double dy = y - mean_y_;
    mean_y_ += dy / static_cast<double>(n_);
    m2x_ += dx * (x - mean_x_);
    m2y_ += dy * (y - mean_y_);
    cxy_ += dx * (y - mean_y_);
}

void CorrelationAccumulator::merge(const CorrelationAccumulator& o) {
    if (o.n_ == 0) return;
    if (n_ == 0) {
        *this = o;
        return;
    }
    const double na = static_cast<double>(n_);
    const double nb = static_cast<double>(o.n_);
    const double n = na + nb;
    const double dx = o.mean_x_ - mean_x_;
    const double dy = o.mean_y_ - mean_y_;
    m2x_ += o.m2x_ + dx * dx * na * nb / n;
    m2y_ += o.m2y_ + dy * dy * na * nb / n;
    cxy_ += o.cxy_ + dx * dy * na * nb / n;
    mean_x_ += dx * nb / n;
    mean_y_ += dy * nb / n;
    n_ += o.n_;
}

double CorrelationAccumulator::pearson() const {
    if (n_ < 2) throw Error(ErrorKind::InsufficientData, "correlation needs at least two samples");
    if (!(m2x_ > 0.0) || !(m2y_ > 0.0)) throw Error(ErrorKind::InsufficientData, "zero variance");
    return cxy_ / std::sqrt(m2x_ * m2y_);
}

double sample_correlation(std::span<const RadiusPair> samples, SampleFilter filter) {
    CorrelationAccumulator acc;
    for (const auto& s : samples)
        if (filter == SampleFilter::All || s.separable) acc.add(s.rA, s.rB);
    return acc.pearson();
}

namespace {
std::vector<double> average_ranks(std::span<const double> v) {
    std::vector<std::size_t> order(v.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> rank(v.size());
    for (std::size_t i = 0; i < order.size();) {
        std::size_t j = i;
        while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
        const double r = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k) rank[order[k]] = r;
        i = j + 1;
    }
    return rank;
}
}  // namespace

double spearman(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw Error(ErrorKind::ShapeMismatch, "spearman inputs differ in length");
    const auto rx = average_ranks(x);
    const auto ry = average_ranks(y);
    CorrelationAccumulator acc;
    for (std::size_t k = 0; k < rx.size(); ++k) acc.add(rx[k], ry[k]);
    return acc.pearson();
}

// --------------------------------------------------------------------- CSV

void write_counts_csv(std::ostream& os, const JointRadialHistogram& h, bool separable) {
    const int n = h.nbins();
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (j) os << ',';
            os << (separable ? h.separable(i, j) : h.total(i, j));
        }
        os << '\n';
    }
}

std::vector<std::uint64_t> read_counts_csv(std::istream& is, int& nbins) {
    std::vector<std::uint64_t> counts;
    std::string line;
    int rows = 0;
    int cols = -1;
    while (std::getline(is, line)) {
        if (line.empty() || line == "\r") continue;
        std::stringstream ss(line);
        std::string cell;
        int c = 0;
        while (std::getline(ss, cell, ',')) {
            try {
                std::size_t used = 0;
                counts.push_back(std::stoull(cell, &used));
            } catch (const std::exception&) {
                throw Error(ErrorKind::Parse, "bad count '" + cell + "' on row " + std::to_string(rows + 1));
            }
            ++c;
        }
        if (cols >= 0 && c != cols) throw Error(ErrorKind::Parse, "ragged count matrix");
        cols = c;
        ++rows;
    }
    if (rows == 0 || rows != cols) throw Error(ErrorKind::Parse, "count matrix must be square and non-empty");
    nbins = rows;
    return counts;
}

void write_curve_csv(std::ostream& os, const CurveEstimate& c) {
    os << "midpoint,probability,count\n";
    const auto old_flags = os.flags();
    const auto old_prec = os.precision();
    for (std::size_t k = 0; k < c.size(); ++k) {
        os << std::setprecision(6) << std::fixed << c.abscissae[k] << ',';
        if (c.probabilities[k]) os << std::setprecision(12) << *c.probabilities[k];
        os << ',' << c.counts[k] << '\n';
    }
    os.flags(old_flags);
    os.precision(old_prec);
}

}  // namespace sepscan
