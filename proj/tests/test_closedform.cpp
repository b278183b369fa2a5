#include "doctest.h"

#include "sepscan/closedform.hpp"
#include "sepscan/error.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace sepscan;

namespace {

const double kPi2 = std::numbers::pi * std::numbers::pi;

Poly1 poly(std::initializer_list<int> ascending) {
    std::vector<Rational> c;
    for (int v : ascending) c.emplace_back(v);
    return Poly1(c);
}

}  // namespace

TEST_CASE("polynomial arithmetic") {
    const Poly1 x = Poly1::x();
    const Poly1 p = (x - 1) * (x - 1) * (x + 2);
    CHECK(p == poly({2, -3, 0, 1}));
    CHECK(p.derivative() == poly({-3, 0, 3}));
    CHECK(Poly1::gcd(p, (x - 1) * (x + 5)) == x - 1);
    const auto [q, r] = Poly1::divmod(p, x * x);
    CHECK(q == x);
    CHECK(r == poly({2, -3}));
    CHECK(p.compose(1 - x) == poly({0, 0, 3, -1}));
    CHECK(p(Rational(1, 2)) == Rational(5, 8));
    CHECK(p(0.5) == doctest::Approx(0.625));
    CHECK(parse_rational("-0.125") == Rational(-1, 8));
    CHECK(parse_rational("3/4") == Rational(3, 4));
    CHECK(parse_rational("1.5e-2") == Rational(3, 200));
    CHECK_THROWS_AS(parse_rational("x"), Error);
    CHECK(to_string(Rational(-6, 4)) == "-3/2");

    const Poly2 a = Poly2::ra(), b = Poly2::rb();
    const Poly2 s = (a + 2 * b) * (a - b);
    CHECK(s(Rational(3), Rational(1)) == Rational(10));
    CHECK(s.swapped()(Rational(1), Rational(3)) == Rational(10));
    CHECK(s(0.25, 0.5) == doctest::Approx(-0.3125));
    CHECK(s.along(x, 1 - x)(Rational(1, 2)) == 0);
}

TEST_CASE("rational functions") {
    const Poly1 x = Poly1::x();
    const RationalFunction1 f((x - 1) * (x + 1), (x - 1) * 2);
    CHECK(same_function(f, RationalFunction1(x + 1, Poly1(2))));
    CHECK(f.reduced().den == Poly1(1));
    CHECK_THROWS_AS(f(Rational(1)), Error);
}

TEST_CASE("x_total and x_sep") {
    std::mt19937_64 g(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 1000; ++k) {
        const double a = u(g), b = u(g);
        CHECK(x_total(a, b) == doctest::Approx(x_total(b, a)).epsilon(1e-12));
        CHECK(x_sep(a, b) == doctest::Approx(x_sep(b, a)).epsilon(1e-12));
        CHECK(x_total(1.0, b) == doctest::Approx(0.0));
    }
    for (int i = 0; i <= 200; ++i)
        for (int j = 0; j <= 200; ++j) {
            const double a = i / 200.0, b = j / 200.0;
            CHECK(x_sep(a, b) <= x_total(a, b) + 1e-15);
        }
    CHECK(x_sep(0, 0) / x_total(0, 0) == doctest::Approx(0.375).epsilon(1e-14));
    CHECK(x_total_surface().is_symmetric());
    CHECK(x_total_surface().scale() == doctest::Approx(kPi2));
}

TEST_CASE("x_prob") {
    const Rational h(1, 2);
    CHECK(x_prob(h, h) == Rational(139, 384));
    CHECK(x_prob(Rational(0), Rational(0)) == Rational(3, 8));
    CHECK(x_prob(Rational(1), Rational(1)) == 0);
    CHECK(x_prob(Rational(0), Rational(1)) == h);
    CHECK(x_prob(Rational(1), Rational(0)) == h);
    for (int i = 0; i < 100; ++i)
        for (int j = 0; j < 100; ++j) {
            const Rational A(4 * i + 1, 400), B(2 * j + 1, 200);
            CHECK(std::abs(x_prob(to_double(A), to_double(B)) - to_double(x_prob(A, B))) < 1e-12);
        }
    for (int i = 0; i <= 500; ++i)
        for (int j = 0; j <= 500; ++j) {
            const double p = x_prob(i / 500.0, j / 500.0);
            CHECK((p >= 0.0 && p <= 1.0));
        }
}

TEST_CASE("x curves") {
    const Rational h(1, 2);
    CHECK(x_diag_curve().exact(Rational(1)) == 0);
    CHECK(x_antidiag_curve().exact(h) == Rational(139, 384));
    const auto& pieces = x_antidiag_curve().pieces();
    REQUIRE(pieces.size() == 2);
    CHECK(pieces[0].f(h) == pieces[1].f(h));
    CHECK(x_half_curve().exact(h) == Rational(139, 384));
    CHECK(xk5_half_curve().exact(h) == Rational(1261, 2176));
    for (int k = 0; k <= 1000; ++k) {
        const double r = k / 1000.0;
        CHECK(std::abs(x_half(r) - x_prob(r, 0.5)) < 1e-12);
        CHECK(std::abs(x_diag(r) - x_prob(r, r)) < 1e-12);
        CHECK(std::abs(x_antidiag(r) - x_prob(r, 1.0 - r)) < 1e-12);
    }
}

TEST_CASE("piecewise construction rejects discontinuities") {
    const Poly1 x = Poly1::x();
    CHECK_THROWS_AS(PiecewiseCurve("bad", {{0, Rational(1, 2), RationalFunction1(x)},
                                           {Rational(1, 2), 1, RationalFunction1(x + 1)}}),
                    Error);
    CHECK_THROWS_AS(PiecewiseCurve("bad", {{0, 1, RationalFunction1(x)}}, {{Rational(1, 2), Rational(1, 3)}}),
                    Error);
    const Poly2 a = Poly2::ra(), b = Poly2::rb();
    CHECK_THROWS_AS(PiecewiseSurface("bad", RationalFunction2(a), RationalFunction2(a + b)), Error);
    CHECK_NOTHROW(PiecewiseSurface("ok", RationalFunction2(a * b), RationalFunction2(a * a)));
}

TEST_CASE("polynomial roots") {
    CHECK(std::abs(poly_root(x_crossover_quintic(), 0.3, 0.5) - 0.40182804) < 1e-7);
    CHECK(std::abs(poly_root(xk5_crossover_octic(), 0.3, 0.4) - 0.3385355079) < 1e-7);
    CHECK(std::abs(poly_root(k3_crossover_quartic(), 0.4, 0.5) - 0.487543066126) < 1e-7);
    CHECK(x_crossover_quintic() == poly({1, 4, -14, -8, 5, 4}));
    CHECK(k3_crossover_quartic() == poly({18105, -26340, -26711, 6885, 5100}));

    for (const Poly1* p : {&x_crossover_quintic(), &xk5_crossover_octic(), &k3_crossover_quartic()}) {
        const RootEnclosure e = poly_root_enclosure(*p, exact(0.3), exact(0.5) - (p == &xk5_crossover_octic() ? Rational(1, 10) : Rational(0)));
        CHECK(to_double(e.hi - e.lo) <= 1e-12);
        CHECK(p->sign_at(e.lo) * p->sign_at(e.hi) < 0);
    }
    CHECK_THROWS_AS(poly_root(poly({-1, 0, 1}), 2.0, 3.0), Error);
    CHECK(poly_root(poly({-1, 0, 1}), 0.0, 1.0) == doctest::Approx(1.0));
}

TEST_CASE("extrema") {
    const ExtremumResult mx = curve_extremum(x_diag_curve(), 0.0, 1.0, Extremum::Max);
    CHECK(std::abs(mx.x - 0.2722700792) < 1e-8);
    CHECK(std::abs(mx.value - 0.393558399) < 1e-8);
    CHECK(std::abs(mx.x - poly_root(poly({-1, 1, 9, 3}), 0.0, 1.0)) < 1e-9);
    CHECK(std::abs(mx.value - poly_root(poly({-9, -28, 108, 54}), 0.0, 1.0)) < 1e-9);

    const ExtremumResult mn = curve_extremum(x_antidiag_curve(), 0.0, 1.0, Extremum::Min);
    CHECK(mn.x == doctest::Approx(0.5));
    CHECK(mn.value == doctest::Approx(139.0 / 384.0).epsilon(1e-12));

    const ExtremumResult gap = curve_extremum(x_diag_curve() - x_antidiag_curve(), 0.40182804, 0.5, Extremum::Max);
    CHECK(std::abs(gap.value - 0.0056796160) < 1e-8);
    CHECK(std::abs(gap.x - 0.4564893379) < 1e-8);
}

TEST_CASE("curve intersections") {
    const auto hd = intersect_curves(x_half_curve(), x_diag_curve(), 0.0, 0.5);
    const auto ha = intersect_curves(x_half_curve(), x_antidiag_curve(), 0.0, 0.5);
    REQUIRE(hd.size() == 1);
    REQUIRE(ha.size() == 1);
    CHECK(std::abs(hd[0] - 0.364314) < 1e-5);
    CHECK(std::abs(ha[0] - 0.428908) < 1e-5);
    CHECK(std::abs(hd[0] - poly_root(half_diag_quintic(), 0.3, 0.4)) < 1e-9);
    CHECK(std::abs(ha[0] - poly_root(half_antidiag_sextic(), 0.4, 0.45)) < 1e-9);

    const auto da = intersect_curves(x_diag_curve(), x_antidiag_curve(), 0.0, 0.5);
    REQUIRE(da.size() == 1);
    CHECK(std::abs(da[0] - poly_root(x_crossover_quintic(), 0.3, 0.5)) < 1e-9);

    CHECK(intersect_curves(PiecewiseCurve::single("a", Poly1(0)), PiecewiseCurve::single("b", Poly1(1)), 0.0, 1.0)
              .empty());
}

TEST_CASE("quadrature") {
    CHECK(std::abs(integrate_surface(x_prob_surface()) - 0.381678) < 1e-4);
    CHECK(std::abs(integrate_surface([](double a, double b) { return x_total(a, b); }) -
                   kPi2 * (16.0 / 35.0) / 2304.0) < 1e-9);
    CHECK(integrate_surface([](double, double) { return 1.0; }) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(integrate_surface([](double a, double) { return a; }, [](double, double) { return 0.0; }) ==
          doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("X-state radius correlation") {
    const CorrelationResult all = x_correlation(VolumeFilter::All);
    const CorrelationResult sep = x_correlation(VolumeFilter::Separable);
    CHECK(std::abs(all.unnormalized - 0.702341) < 1e-5);
    CHECK(std::abs(sep.unnormalized - 0.68326) < 1e-5);
    const double pi2 = kPi2, pi4 = kPi2 * kPi2;
    CHECK(std::abs(*all.closed_form - (1.0 - 11206656.0 / (37748736.0 - 10080.0 * pi2 + pi4))) < 1e-12);
    CHECK(std::abs(all.unnormalized - *all.closed_form) < 1e-9);
    CHECK(std::abs(sep.unnormalized - *sep.closed_form) < 1e-9);
    // Pearson under the normalized density
    CHECK(all.pearson == doctest::Approx(0.09236798).epsilon(1e-6));
    CHECK(sep.pearson == doctest::Approx(0.03265535).epsilon(1e-6));

    auto g = [](double r) { return 1.0 + r * r; };
    const auto prod = [&](double a, double b) { return g(a) * g(b); };
    CHECK(std::abs(surface_correlation(prod, prod).pearson) < 1e-9);
}
