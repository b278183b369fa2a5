#include "sepscan/fits.hpp"

#include "sepscan/error.hpp"

#include <algorithm>
#include <cmath>

namespace sepscan {

namespace {

const Rational kHalf(1, 2);

Poly1 q1(long long n, long long d = 1) { return Poly1(Rational(n, d)); }

Poly2 in_rb(const Poly1& p) {
    Poly2 out;
    Poly2 power(1);
    for (const auto& c : p.coeffs()) {
        out = out + Poly2(c) * power;
        power = power * Poly2::rb();
    }
    return out;
}

Poly1 decimal_poly(std::initializer_list<const char*> descending) {
    std::vector<Rational> asc;
    for (auto it = descending.end(); it != descending.begin();) asc.push_back(parse_rational(*--it));
    return Poly1(std::move(asc));
}

}  // namespace

// ------------------------------------------------------------------- K = 3

const Poly1& k3_sep_S() {
    static const Poly1 r = Poly1::x();
    static const Poly1 s = -22675 * r.pow(3) - 852 * r.pow(2) + 470 * r + 96;
    return s;
}

const Poly1& k3_sep_T() {
    static const Poly1 r = Poly1::x();
    static const Poly1 t = -5100 * r.pow(4) + 5502 * r.pow(3) + 49355 * r.pow(2) - 1152 * r - 5196;
    return t;
}

const PiecewiseSurface& k3_total_surface() {
    static const PiecewiseSurface s = [] {
        const Poly2 A = Poly2::ra(), B = Poly2::rb();
        const Poly1 r = Poly1::x();
        RationalFunction2 upper(8 * (A - 1).pow(4) * (A.pow(2) + 4 * A - 5 * B.pow(2)), A);
        RationalFunction2 lower(8 * (B - 1).pow(4) * (B * (B + 4) - 5 * A.pow(2)), B);
        return PiecewiseSurface("k3_total", upper, lower, 1.0, RationalFunction1(-32 * (r - 1).pow(5))).open_at_zero();
    }();
    return s;
}

const PiecewiseSurface& k3_sep_surface() {
    static const PiecewiseSurface s = [] {
        const Poly2 A = Poly2::ra(), B = Poly2::rb();
        const Poly1 r = Poly1::x();
        const Poly2 S = in_rb(k3_sep_S()), T = in_rb(k3_sep_T());
        const Poly2 inner = -A.pow(3) * (6012 * B + 2351) + 2 * A.pow(2) * (2424 * B - 9859) + T * A +
                            2785 * A.pow(4) + S * B;
        RationalFunction2 upper(-(A - 1).pow(4) * inner, 5100 * A);
        return PiecewiseSurface::symmetric("k3_sep", upper, 1.0,
                                           RationalFunction1((r - 1).pow(6) * (r.pow(2) + 6 * r + 1)))
            .open_at_zero();
    }();
    return s;
}

const PiecewiseSurface& k3_prob_surface() {
    static const PiecewiseSurface s = k3_sep_surface() / k3_total_surface();
    return s;
}

double k3_total(double rA, double rB) { return k3_total_surface()(rA, rB); }
double k3_sep(double rA, double rB) { return k3_sep_surface()(rA, rB); }

const PiecewiseCurve& k3_diag_curve() {
    static const PiecewiseCurve c = [] {
        const Poly1 r = Poly1::x();
        return PiecewiseCurve::single("k3_diag", RationalFunction1(q1(1, 32) * (1 - r) * (r.pow(2) + 6 * r + 1)));
    }();
    return c;
}

const PiecewiseCurve& k3_antidiag_curve() {
    static const PiecewiseCurve c = [] {
        const Poly1 r = Poly1::x();
        RationalFunction1 below(5100 * r.pow(5) - 24480 * r.pow(4) - 66682 * r.pow(3) + 49256 * r.pow(2) +
                                    38325 * r - 24480,
                                40800 * (4 * r.pow(2) + 6 * r - 5));
        RationalFunction1 above(-5100 * r.pow(5) + 1020 * r.pow(4) + 113602 * r.pow(3) - 246670 * r.pow(2) +
                                    135629 * r - 22961,
                                40800 * (4 * r.pow(2) - 14 * r + 5));
        // pinned at 1/2 to the left limit; the constructor rejects a jump
        return PiecewiseCurve("k3_antidiag", {{0, kHalf, below}, {kHalf, 1, above}}, {{kHalf, below(kHalf)}});
    }();
    return c;
}

double k3_diag(double rA) { return k3_diag_curve()(rA); }
double k3_antidiag(double rA) { return k3_antidiag_curve()(rA); }

// ------------------------------------------------------------- K = 4, 5

const PiecewiseCurve& k4_diag_curve() {
    static const PiecewiseCurve c = [] {
        const Poly1 r = Poly1::x();
        return PiecewiseCurve::single(
            "k4_diag", RationalFunction1(-35 * (r - 1) * (58 * r.pow(2) + 17 * r + 2), 384 * (8 * r + 1)));
    }();
    return c;
}

const PiecewiseCurve& k4_antidiag_curve() {
    static const PiecewiseCurve c = [] {
        const Poly1 num = decimal_poly({"-0.660807", "-119.919", "237.198", "-200.68", "90.0466", "-21.6016", "2.32483"});
        const Poly1 den = decimal_poly({"-1", "-66.164", "75.933", "-30.4436", "4.64965"});
        const Poly1 mirror = 1 - Poly1::x();
        RationalFunction1 below(num, den);
        RationalFunction1 above(num.compose(mirror), den.compose(mirror));
        return PiecewiseCurve("k4_antidiag (empirical)", {{0, kHalf, below}, {kHalf, 1, above}});
    }();
    return c;
}

const PiecewiseCurve& k5_diag_curve() {
    static const PiecewiseCurve c = [] {
        const Poly1 r = Poly1::x();
        return PiecewiseCurve::single(
            "k5_diag", RationalFunction1(-1617 * (r - 1) * (216 * r.pow(3) + 111 * r.pow(2) + 20 * r + 2),
                                         8192 * (40 * r.pow(2) + 11 * r + 1)));
    }();
    return c;
}

double k4_diag(double rA) { return k4_diag_curve()(rA); }
double k4_antidiag(double rA) { return k4_antidiag_curve()(rA); }
double k5_diag(double rA) { return k5_diag_curve()(rA); }

const DiagonalVolumes& diagonal_volumes(int K) {
    static const DiagonalVolumes k4 = [] {
        const Poly1 r = Poly1::x();
        const Poly1 s = 1 - r;
        return DiagonalVolumes{RationalFunction1(q1(256, 5) * s.pow(8) * (8 * r + 1)),
                               RationalFunction1(q1(28, 3) * s.pow(9) * (29 * r.pow(2) + q1(17, 2) * r + 1))};
    }();
    static const DiagonalVolumes k5 = [] {
        const Poly1 r = Poly1::x();
        const Poly1 s = 1 - r;
        return DiagonalVolumes{
            RationalFunction1(q1(4096, 33) * s.pow(11) * (40 * r.pow(2) + 11 * r + 1)),
            RationalFunction1(49 * s.pow(12) * (108 * r.pow(3) + q1(111, 2) * r.pow(2) + 10 * r + 1))};
    }();
    if (K == 4) return k4;
    if (K == 5) return k5;
    throw Error(ErrorKind::InvalidSpec, "diagonal volumes are printed for K = 4 and 5 only");
}

// ------------------------------------------------------------ chi-squared

FitReport chi_squared(const std::function<double(double)>& f, const CurveEstimate& data, std::uint64_t min_count,
                      std::string formula, bool empirical) {
    FitReport rep;
    rep.formula = std::move(formula);
    rep.empirical = empirical;
    for (std::size_t k = 0; k < data.size(); ++k) {
        const std::uint64_t n = data.counts[k];
        if (!data.probabilities[k] || n < std::max<std::uint64_t>(min_count, 1)) {
            ++rep.skipped;
            continue;
        }
        const double p = *data.probabilities[k];
        const double nn = static_cast<double>(n);
        const double var = std::max(p * (1.0 - p) / nn, 1.0 / (4.0 * nn * nn));
        const double resid = p - f(data.abscissae[k]);
        rep.abscissae.push_back(data.abscissae[k]);
        rep.residuals.push_back(resid);
        rep.statistic += resid * resid / var;
        ++rep.dof;
    }
    if (rep.dof == 0) throw Error(ErrorKind::NoData, "no defined bins for " + rep.formula);
    return rep;
}

FitReport chi_squared(const PiecewiseCurve& f, const CurveEstimate& data, std::uint64_t min_count) {
    const bool empirical = f.name().find("empirical") != std::string::npos;
    return chi_squared([&](double x) { return f(x); }, data, min_count, f.name(), empirical);
}

}  // namespace sepscan
