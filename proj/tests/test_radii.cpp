#include "doctest.h"

#include "sepscan/error.hpp"
#include "sepscan/measures.hpp"
#include "sepscan/radii.hpp"

using namespace sepscan;

namespace {

DensityMatrix d2(double p0) {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(0, 0) = p0;
    m(1, 1) = 1.0 - p0;
    return validate(m);
}

}  // namespace

TEST_CASE("bloch_radius") {
    CHECK(bloch_radius(d2(0.5)) == doctest::Approx(0.0));
    CHECK(bloch_radius(d2(0.75)) == doctest::Approx(0.5));
    ComplexMatrix pure(2, 2);
    pure << 0.5, Complex(0.3, 0.4), Complex(0.3, -0.4), 0.5;
    CHECK(bloch_radius(validate(pure)) == doctest::Approx(1.0));
    CHECK_THROWS_AS(bloch_radius(validate(ComplexMatrix::Identity(3, 3) / 3.0)), Error);
}

TEST_CASE("generalized_bloch_radius") {
    CHECK(generalized_bloch_radius(validate(ComplexMatrix::Identity(3, 3) / 3.0)) == doctest::Approx(0.0));
    ComplexMatrix p = ComplexMatrix::Zero(3, 3);
    p(1, 1) = 1.0;
    CHECK(generalized_bloch_radius(validate(p)) == doctest::Approx(1.0));
    CHECK_THROWS_AS(generalized_bloch_radius(validate(ComplexMatrix::Identity(1, 1))), Error);

    Sampler s(MeasureSpec{Family::GinibreInduced, 2, 2, {1, 2}, 4, 0});
    for (int k = 0; k < 1000; ++k) {
        const DensityMatrix q = s.next_density();
        CHECK(std::abs(generalized_bloch_radius(q) - bloch_radius(q)) < 1e-12);
    }
}

TEST_CASE("radius is increasing in purity") {
    double prev = -1.0;
    for (int k = 0; k <= 100; ++k) {
        const double pur = 1.0 / 3.0 + (2.0 / 3.0) * k / 100.0;
        const double r = radius_from_purity(pur, 3);
        if (k > 0) CHECK(r > prev);
        prev = r;
    }
    CHECK(radius_from_purity(0.3, 3) == 0.0);
}

TEST_CASE("xstate_radii") {
    RadiusPair r = xstate_radii(XStateParams{});
    CHECK(r.rA == doctest::Approx(0.0));
    CHECK(r.rB == doctest::Approx(0.0));
    r = xstate_radii(XStateParams{1, 0, 0, 0});
    CHECK(r.rA == doctest::Approx(1.0));
    CHECK(r.rB == doctest::Approx(1.0));
    r = xstate_radii(XStateParams{0.4, 0.3, 0.2, 0.1});
    CHECK(r.rA == doctest::Approx(0.4));
    CHECK(r.rB == doctest::Approx(0.2));

    Sampler s(MeasureSpec{Family::XFlat, 4, 4, {2, 2}, 8, 0});
    for (int k = 0; k < 1000; ++k) {
        const XStateParams x = s.next_xstate();
        const DensityMatrix rho = xstate_to_density(x);
        const RadiusPair q = xstate_radii(x);
        CHECK(std::abs(q.rA - bloch_radius(partial_trace(rho, Subsystem::A))) < 1e-12);
        CHECK(std::abs(q.rB - bloch_radius(partial_trace(rho, Subsystem::B))) < 1e-12);
    }
}

TEST_CASE("two-qutrit Hilbert-Schmidt radii stay below 0.58") {
    Sampler s(MeasureSpec{Family::GinibreInduced, 9, 9, {3, 3}, 1, 0});
    double worst = 0.0;
    for (int k = 0; k < 1000000; ++k) {
        const RadiusPair p = s.next_radii();
        worst = std::max({worst, p.rA, p.rB});
    }
    CHECK(worst <= 0.58);
}
