#include "sepscan/closedform.hpp"

#include "sepscan/error.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cstdio>
#include <cmath>
#include <initializer_list>
#include <numbers>
#include <set>

namespace sepscan {

namespace {

Poly1 descending(std::initializer_list<long long> c) {
    std::vector<Rational> asc;
    for (auto it = c.end(); it != c.begin();) asc.emplace_back(*--it);
    return Poly1(std::move(asc));
}

Poly2 q2(long long n, long long d = 1) { return Poly2(Rational(n, d)); }

const Rational kHalf(1, 2);

}  // namespace

// ------------------------------------------------------- PiecewiseSurface

PiecewiseSurface::PiecewiseSurface(std::string name, RationalFunction2 upper, RationalFunction2 lower, double scale,
                                   std::optional<RationalFunction1> printed_diagonal)
    : name_(std::move(name)), upper_(std::move(upper)), lower_(std::move(lower)), scale_(scale) {
    const Poly1 t = Poly1::x();
    diagonal_ = upper_.along(t, t).reduced();
    if (!same_function(diagonal_, lower_.along(t, t)))
        throw Error(ErrorKind::Discontinuous, name_ + ": pieces disagree on rA = rB");
    if (printed_diagonal && !same_function(diagonal_, *printed_diagonal))
        throw Error(ErrorKind::Discontinuous, name_ + ": diagonal expression is not the limit of the pieces");
    symmetric_ = same_function(lower_, upper_.swapped());
}

PiecewiseSurface PiecewiseSurface::symmetric(std::string name, RationalFunction2 upper, double scale,
                                             std::optional<RationalFunction1> printed_diagonal) {
    RationalFunction2 lower = upper.swapped();
    return PiecewiseSurface(std::move(name), std::move(upper), std::move(lower), scale, std::move(printed_diagonal));
}

PiecewiseSurface PiecewiseSurface::open_at_zero() const {
    PiecewiseSurface s = *this;
    s.open_at_zero_ = true;
    return s;
}

double PiecewiseSurface::operator()(double rA, double rB) const {
    if (open_at_zero_ && rA != rB && (rA == 0.0 || rB == 0.0))
        throw Error(ErrorKind::DomainError, name_ + ": undefined at zero radius");
    if (rA > rB) return scale_ * upper_(rA, rB);
    if (rA < rB) return scale_ * lower_(rA, rB);
    return scale_ * diagonal_(rA);
}

Rational PiecewiseSurface::exact(const Rational& rA, const Rational& rB) const {
    if (open_at_zero_ && rA != rB && (rA == 0 || rB == 0))
        throw Error(ErrorKind::DomainError, name_ + ": undefined at zero radius");
    if (rA > rB) return upper_(rA, rB);
    if (rA < rB) return lower_(rA, rB);
    return diagonal_(rA);
}

RationalFunction1 PiecewiseSurface::along(const Poly1& fa, const Poly1& fb, bool upper_piece) const {
    return (upper_piece ? upper_ : lower_).along(fa, fb);
}

PiecewiseSurface operator/(const PiecewiseSurface& num, const PiecewiseSurface& den) {
    PiecewiseSurface s(num.name_ + "/" + den.name_, num.upper_ / den.upper_, num.lower_ / den.lower_,
                       num.scale_ / den.scale_);
    s.open_at_zero_ = num.open_at_zero_ || den.open_at_zero_;
    return s;
}

// --------------------------------------------------------- PiecewiseCurve

PiecewiseCurve::PiecewiseCurve(std::string name, std::vector<CurvePiece> pieces,
                               std::vector<std::pair<Rational, Rational>> special)
    : name_(std::move(name)), pieces_(std::move(pieces)), special_(std::move(special)) {
    if (pieces_.empty()) throw Error(ErrorKind::InvalidSpec, name_ + ": no pieces");
    for (std::size_t k = 0; k < pieces_.size(); ++k) {
        if (!(pieces_[k].lo < pieces_[k].hi)) throw Error(ErrorKind::InvalidSpec, name_ + ": empty piece");
        if (k == 0) continue;
        if (pieces_[k].lo != pieces_[k - 1].hi) throw Error(ErrorKind::InvalidSpec, name_ + ": pieces do not tile");
        const Rational& x = pieces_[k].lo;
        const Rational left = pieces_[k - 1].f(x);
        const Rational right = pieces_[k].f(x);
        if (std::abs(to_double(left - right)) > 1e-12)
            throw Error(ErrorKind::Discontinuous, name_ + ": jump at " + to_string(x));
    }
    for (const auto& [x, v] : special_) {
        const CurvePiece& p = piece_for(x);
        if (std::abs(to_double(p.f(x) - v)) > 1e-12)
            throw Error(ErrorKind::Discontinuous, name_ + ": pinned value at " + to_string(x) + " is not the limit");
    }
}

PiecewiseCurve PiecewiseCurve::single(std::string name, RationalFunction1 f, Rational lo, Rational hi) {
    return PiecewiseCurve(std::move(name), {CurvePiece{std::move(lo), std::move(hi), std::move(f)}});
}

const CurvePiece& PiecewiseCurve::piece_for(const Rational& x) const {
    if (x < lo() || x > hi()) throw Error(ErrorKind::OutOfRange, name_ + ": argument " + to_string(x) + " outside domain");
    for (const auto& p : pieces_)
        if (x <= p.hi) return p;
    return pieces_.back();
}

Rational PiecewiseCurve::exact(const Rational& x) const {
    for (const auto& [sx, v] : special_)
        if (sx == x) return v;
    return piece_for(x).f(x);
}

int PiecewiseCurve::sign_at(const Rational& x) const { return sign(exact(x)); }

double PiecewiseCurve::operator()(double x) const {
    for (const auto& [sx, v] : special_)
        if (to_double(sx) == x) return to_double(v);
    if (x < to_double(lo()) || x > to_double(hi()))
        throw Error(ErrorKind::OutOfRange, name_ + ": argument " + std::to_string(x) + " outside domain");
    for (const auto& p : pieces_)
        if (x <= to_double(p.hi)) return p.f(x);
    return pieces_.back().f(x);
}

PiecewiseCurve operator-(const PiecewiseCurve& a, const PiecewiseCurve& b) {
    const Rational lo = std::max(a.lo(), b.lo());
    const Rational hi = std::min(a.hi(), b.hi());
    if (!(lo < hi)) throw Error(ErrorKind::OutOfRange, "curves share no domain");
    std::set<Rational> cuts{lo, hi};
    for (const auto* c : {&a, &b})
        for (const auto& p : c->pieces()) {
            if (p.lo > lo && p.lo < hi) cuts.insert(p.lo);
            if (p.hi > lo && p.hi < hi) cuts.insert(p.hi);
        }
    std::vector<CurvePiece> pieces;
    for (auto it = cuts.begin(); std::next(it) != cuts.end(); ++it) {
        const Rational u = *it;
        const Rational v = *std::next(it);
        const Rational mid = (u + v) / 2;
        pieces.push_back({u, v, (a.piece_for(mid).f - b.piece_for(mid).f).reduced()});
    }
    std::vector<std::pair<Rational, Rational>> special;
    for (const auto* c : {&a, &b})
        for (const auto& [x, v] : c->special_points()) {
            if (x < lo || x > hi) continue;
            if (std::any_of(special.begin(), special.end(), [&](const auto& s) { return s.first == x; })) continue;
            special.emplace_back(x, a.exact(x) - b.exact(x));
        }
    return PiecewiseCurve(a.name() + " - " + b.name(), std::move(pieces), std::move(special));
}

// ---------------------------------------------------------- X-state forms

const PiecewiseSurface& x_total_surface() {
    static const PiecewiseSurface s = [] {
        const Poly2 A = Poly2::ra(), B = Poly2::rb();
        RationalFunction2 upper(q2(-1, 960) * (A - 1).pow(3) * (A * (A + 3) - 5 * B.pow(2) + 1));
        RationalFunction2 lower(q2(-1, 960) * (B - 1).pow(3) * (-5 * A.pow(2) + B * (B + 3) + 1));
        return PiecewiseSurface("x_total", upper, lower, std::numbers::pi * std::numbers::pi);
    }();
    return s;
}

const PiecewiseSurface& x_sep_surface() {
    static const PiecewiseSurface s = [] {
        const Poly2 A = Poly2::ra(), B = Poly2::rb();
        RationalFunction2 upper(q2(-1, 7680) * (A - 1).pow(3) *
                                (5 * (A + 3) * B.pow(4) - 10 * (3 * A + 1) * B.pow(2) + 8 * A.pow(2) + 9 * A + 3));
        RationalFunction2 lower(q2(-1, 7680) * (B - 1).pow(3) *
                                (5 * A.pow(4) * (B + 3) - 10 * A.pow(2) * (3 * B + 1) + B * (8 * B + 9) + 3));
        return PiecewiseSurface("x_sep", upper, lower, std::numbers::pi * std::numbers::pi);
    }();
    return s;
}

const PiecewiseSurface& x_prob_surface() {
    static const PiecewiseSurface s = [] {
        const Poly2 A = Poly2::ra(), B = Poly2::rb();
        RationalFunction2 upper(5 * (A + 3) * B.pow(4) - 10 * (3 * A + 1) * B.pow(2) + 8 * A.pow(2) + 9 * A + 3,
                                8 * (A * (A + 3) - 5 * B.pow(2) + 1));
        RationalFunction2 lower(5 * A.pow(4) * (B + 3) - 10 * A.pow(2) * (3 * B + 1) + B * (8 * B + 9) + 3,
                                8 * (-5 * A.pow(2) + B * (B + 3) + 1));
        return PiecewiseSurface("x_prob", upper, lower, 1.0);
    }();
    return s;
}

double x_total(double rA, double rB) { return x_total_surface()(rA, rB); }
double x_sep(double rA, double rB) { return x_sep_surface()(rA, rB); }
double x_prob(double rA, double rB) { return x_prob_surface()(rA, rB); }
Rational x_prob(const Rational& rA, const Rational& rB) { return x_prob_surface().exact(rA, rB); }

double x_marginal(double r) {
    const double s = 1.0 - r * r;
    return std::numbers::pi * std::numbers::pi * s * s * s / 2304.0;
}

const PiecewiseCurve& x_diag_curve() {
    static const PiecewiseCurve c = [] {
        const Poly1 r = Poly1::x();
        return PiecewiseCurve::single("x_diag", {-(r - 1) * (5 * r * (r * (r + 5) + 3) + 3), 32 * r + 8});
    }();
    return c;
}

const PiecewiseCurve& x_antidiag_curve() {
    static const PiecewiseCurve c = [] {
        const Poly1 r = Poly1::x();
        RationalFunction1 below(r * (r * (5 * r * ((r - 4) * r - 6) + 32) + 25) - 20, 8 * (r * (4 * r + 5) - 5));
        RationalFunction1 above(-((r - 2) * r * (5 * r * (r.pow(2) + r - 10) + 28) + 8), 8 * (r * (4 * r - 13) + 4));
        return PiecewiseCurve("x_antidiag", {{0, kHalf, below}, {kHalf, 1, above}}, {{kHalf, Rational(139, 384)}});
    }();
    return c;
}

const PiecewiseCurve& x_half_curve() {
    static const PiecewiseCurve c = [] {
        const Poly1 r = Poly1::x();
        RationalFunction1 below(35 * r.pow(4) - 50 * r.pow(2) + 19, 44 - 80 * r.pow(2));
        RationalFunction1 above(128 * r.pow(2) + 29 * r + 23, 32 * (4 * r.pow(2) + 12 * r - 1));
        return PiecewiseCurve("x_half", {{0, kHalf, below}, {kHalf, 1, above}}, {{kHalf, Rational(139, 384)}});
    }();
    return c;
}

const PiecewiseCurve& xk5_half_curve() {
    static const PiecewiseCurve c = [] {
        const Poly1 r = Poly1::x();
        RationalFunction1 below(-231 * r.pow(6) + 441 * r.pow(4) - 297 * r.pow(2) + 70,
                                336 * r.pow(4) - 360 * r.pow(2) + 103);
        RationalFunction1 above(512 * r.pow(4) + 2560 * r.pow(3) - 384 * r.pow(2) + 679 * r + 35,
                                32 * (16 * r.pow(4) + 80 * r.pow(3) + 120 * r.pow(2) - 40 * r + 13));
        return PiecewiseCurve("xk5_half", {{0, kHalf, below}, {kHalf, 1, above}}, {{kHalf, Rational(1261, 2176)}});
    }();
    return c;
}

double x_diag(double rA) { return x_diag_curve()(rA); }
double x_antidiag(double rA) { return x_antidiag_curve()(rA); }
double x_half(double rA) { return x_half_curve()(rA); }
double xk5_half(double rA) { return xk5_half_curve()(rA); }

const Poly1& x_crossover_quintic() {
    static const Poly1 p = descending({4, 5, -8, -14, 4, 1});
    return p;
}

const Poly1& xk5_crossover_octic() {
    static const Poly1 p = descending({112, 252, -203, -938, -441, 728, 27, -42, -7});
    return p;
}

const Poly1& k3_crossover_quartic() {
    static const Poly1 p = descending({5100, 6885, -26711, -26340, 18105});
    return p;
}

const Poly1& half_diag_quintic() {
    static const Poly1 p = descending({10, 17, -24, -18, 6, 1});
    return p;
}

const Poly1& half_antidiag_sextic() {
    static const Poly1 p = descending({10, -7, -34, -6, 30, 5, -6});
    return p;
}

// ------------------------------------------------------------ root finding

RootEnclosure poly_root_enclosure(const Poly1& p, const Rational& lo, const Rational& hi, double tol) {
    int slo = p.sign_at(lo);
    const int shi = p.sign_at(hi);
    if (slo * shi >= 0) {
        if (slo == 0) return {lo, lo};
        if (shi == 0) return {hi, hi};
        throw Error(ErrorKind::NoSignChange, "no sign change of " + p.str() + " on [" + to_string(lo) + ", " +
                                                 to_string(hi) + "]");
    }
    Rational a = lo, b = hi;
    const Rational width = exact(tol);
    while (b - a > width) {
        const Rational m = (a + b) / 2;
        const int sm = p.sign_at(m);
        if (sm == 0) return {m, m};
        if (sm == slo) {
            a = m;
        } else {
            b = m;
        }
    }
    return {a, b};
}

double poly_root(const Poly1& p, double lo, double hi, double tol) {
    return poly_root_enclosure(p, exact(lo), exact(hi), tol).midpoint();
}

namespace {

// Zeros of a polynomial on [a, b]: sign scan then exact bisection.
std::vector<Rational> zeros_on(const Poly1& p, const Rational& a, const Rational& b, int grid, double tol) {
    std::vector<Rational> out;
    if (p.is_zero() || p.degree() == 0) return out;
    const double da = to_double(a), db = to_double(b);
    Rational prev_x = a;
    int prev_s = p.sign_at(a);
    if (prev_s == 0) out.push_back(a);
    for (int g = 1; g <= grid; ++g) {
        const Rational x = g == grid ? b : exact(da + (db - da) * g / grid);
        const int s = p.sign_at(x);
        if (s == 0) {
            out.push_back(x);
        } else if (prev_s != 0 && s != prev_s) {
            const RootEnclosure e = poly_root_enclosure(p, prev_x, x, tol);
            out.push_back((e.lo + e.hi) / 2);
        }
        prev_x = x;
        prev_s = s;
    }
    return out;
}

}  // namespace

ExtremumResult curve_extremum(const PiecewiseCurve& c, double lo, double hi, Extremum mode) {
    const Rational a = exact(lo), b = exact(hi);
    if (!(a <= b)) throw Error(ErrorKind::OutOfRange, "curve_extremum: lo > hi");
    std::vector<Rational> candidates{a, b};
    for (const auto& p : c.pieces()) {
        const Rational u = std::max(a, p.lo), v = std::min(b, p.hi);
        if (u > v) continue;
        candidates.push_back(u);
        candidates.push_back(v);
        if (u == v) continue;
        for (const auto& z : zeros_on(p.f.derivative_numerator(), u, v, 2000, 1e-14)) candidates.push_back(z);
    }
    std::optional<ExtremumResult> best;
    for (const auto& x : candidates) {
        const double value = to_double(c.exact(x));
        const bool better = !best || (mode == Extremum::Max ? value > best->value : value < best->value);
        if (better) best = ExtremumResult{to_double(x), value};
    }
    return *best;
}

std::vector<double> intersect_curves(const PiecewiseCurve& c1, const PiecewiseCurve& c2, double lo, double hi,
                                     int grid, double tol) {
    const PiecewiseCurve d = c1 - c2;
    std::vector<double> roots;
    Rational prev_x;
    int prev_s = 0;
    for (int g = 1; g < grid; ++g) {
        const double xd = lo + (hi - lo) * g / grid;
        const Rational x = exact(xd);
        const double approx = d(xd);
        const int s = std::abs(approx) > 1e-6 ? (approx > 0 ? 1 : -1) : d.sign_at(x);
        if (s == 0) {
            roots.push_back(to_double(x));
        } else if (prev_s != 0 && s != prev_s) {
            // bisect the difference curve with exact signs
            Rational u = prev_x, v = x;
            const Rational width = exact(tol);
            while (v - u > width) {
                const Rational m = (u + v) / 2;
                const int sm = d.sign_at(m);
                if (sm == 0) {
                    u = v = m;
                    break;
                }
                (sm == prev_s ? u : v) = m;
            }
            roots.push_back(to_double((u + v) / 2));
        }
        prev_x = x;
        prev_s = s;
    }
    return roots;
}

// -------------------------------------------------------------- quadrature

namespace {

using boost::math::quadrature::gauss_kronrod;

std::string fmt_g(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

struct Integral {
    double value;
    double error;
};

Integral integrate_1d(const std::function<double(double)>& f, double a, double b, unsigned depth) {
    double err = 0.0;
    const double v = gauss_kronrod<double, 31>::integrate(f, a, b, depth, 1e-12, &err);
    return {v, err};
}

// Duffy map collapsing the corner (1, 1): with u = 1 - rA, v = 1 - rB the
// triangle rA > rB is 0 < u < v < 1; set v = s, u = s w.
Integral triangle(const SurfaceFn& f, bool upper) {
    double worst_inner = 0.0;
    auto outer = [&](double s) {
        const Integral in = integrate_1d(
            [&](double w) {
                const double near = 1.0 - s * w, far = 1.0 - s;
                return s * (upper ? f(near, far) : f(far, near));
            },
            0.0, 1.0, 10);
        worst_inner = std::max(worst_inner, in.error);
        return in.value;
    };
    const Integral out = integrate_1d(outer, 0.0, 1.0, 12);
    return {out.value, out.error + worst_inner};
}

}  // namespace

double integrate_surface(const SurfaceFn& upper, const SurfaceFn& lower, double tol) {
    const Integral u = triangle(upper, true);
    const Integral l = triangle(lower, false);
    const double err = u.error + l.error;
    if (!(err <= tol))
        throw Error(ErrorKind::ToleranceNotReached,
                    "quadrature error estimate " + fmt_g(err) + " exceeds " + fmt_g(tol));
    return u.value + l.value;
}

double integrate_surface(const SurfaceFn& f, double tol) { return integrate_surface(f, f, tol); }

double integrate_surface(const PiecewiseSurface& s, double tol) {
    const double k = s.scale();
    return integrate_surface([&](double a, double b) { return k * s.upper()(a, b); },
                             [&](double a, double b) { return k * s.lower()(a, b); }, tol);
}

CorrelationResult surface_correlation(const SurfaceFn& upper, const SurfaceFn& lower, double tol) {
    auto moment = [&](auto weight) {
        return integrate_surface([&](double a, double b) { return weight(a, b) * upper(a, b); },
                                 [&](double a, double b) { return weight(a, b) * lower(a, b); }, tol);
    };
    const double z = moment([](double, double) { return 1.0; });
    const double ea = moment([](double a, double) { return a; });
    const double eb = moment([](double, double b) { return b; });
    const double eaa = moment([](double a, double) { return a * a; });
    const double ebb = moment([](double, double b) { return b * b; });
    const double eab = moment([](double a, double b) { return a * b; });

    CorrelationResult r;
    const double ma = ea / z, mb = eb / z;
    r.pearson = (eab / z - ma * mb) / std::sqrt((eaa / z - ma * ma) * (ebb / z - mb * mb));
    // centred at the unnormalized means: int (a - ea)(b - eb) f
    const double cov = eab - ea * eb * (2.0 - z);
    const double va = eaa - ea * ea * (2.0 - z);
    const double vb = ebb - eb * eb * (2.0 - z);
    r.unnormalized = cov / std::sqrt(va * vb);
    return r;
}

CorrelationResult x_correlation(VolumeFilter filter, double tol) {
    const PiecewiseSurface& s = filter == VolumeFilter::All ? x_total_surface() : x_sep_surface();
    const double k = s.scale();
    CorrelationResult r = surface_correlation([&](double a, double b) { return k * s.upper()(a, b); },
                                              [&](double a, double b) { return k * s.lower()(a, b); }, tol);
    const double pi2 = std::numbers::pi * std::numbers::pi;
    const double pi4 = pi2 * pi2;
    r.closed_form = filter == VolumeFilter::All ? 1.0 - 11206656.0 / (37748736.0 - 10080.0 * pi2 + pi4)
                                                : 1.0 - 74649600.0 / (235929600.0 - 25200.0 * pi2 + pi4);
    return r;
}

}  // namespace sepscan
