#include "doctest.h"

#include "sepscan/closedform.hpp"
#include "sepscan/error.hpp"
#include "sepscan/histogram.hpp"
#include "sepscan/measures.hpp"

#include <cmath>
#include <sstream>

using namespace sepscan;

namespace {

JointRadialHistogram exact_x_histogram(double scale = 1e9) {
    const int n = 100;
    std::vector<std::uint64_t> tot(n * n), sep(n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double a = (i + 0.5) / n, b = (j + 0.5) / n;
            tot[i * n + j] = static_cast<std::uint64_t>(std::llround(x_total(a, b) * scale));
            sep[i * n + j] = static_cast<std::uint64_t>(std::llround(x_sep(a, b) * scale));
        }
    return JointRadialHistogram::from_counts(n, 1.0, tot, sep);
}

CurveEstimate line(std::function<double(double)> f, int n = 100, std::uint64_t count = 1000000) {
    CurveEstimate c;
    for (int i = 0; i < n; ++i) {
        const double x = (i + 0.5) / n;
        c.push(x, static_cast<std::uint64_t>(std::llround(f(x) * count)), count);
    }
    return c;
}

}  // namespace

TEST_CASE("accumulate and binning") {
    JointRadialHistogram h;
    h.accumulate({0.005, 0.005, true});
    CHECK(h.total(0, 0) == 1);
    CHECK(h.separable(0, 0) == 1);
    h.accumulate({1.0, 0.5, false});
    CHECK(h.total(99, 50) == 1);
    CHECK(h.separable(99, 50) == 0);
    CHECK(h.bin_of(0.0) == 0);
    CHECK(h.bin_of(0.01) == 1);
    CHECK(h.bin_of(0.999999) == 99);
    CHECK(h.midpoint(50) == doctest::Approx(0.505));
    CHECK_THROWS_AS(h.accumulate({1.0001, 0.2, false}), Error);
    CHECK_THROWS_AS(h.accumulate({-1e-3, 0.2, false}), Error);
    CHECK(h.grand_total() == 2);
    CHECK(h.grand_separable() == 1);
    CHECK(*h.probability(0, 0) == 1.0);
    CHECK_FALSE(h.probability(1, 1).has_value());

    JointRadialHistogram q(10, 0.5);
    q.accumulate({0.5, 0.26, true});
    CHECK(q.total(9, 5) == 1);
    CHECK(q.midpoint(0) == doctest::Approx(0.025));
}

TEST_CASE("merge") {
    JointRadialHistogram a, b, empty;
    a.accumulate({0.1, 0.2, true});
    a.accumulate({0.3, 0.2, false});
    b.accumulate({0.1, 0.2, false});
    CHECK(merge(a, empty) == a);
    CHECK(merge(a, b) == merge(b, a));
    CHECK(merge(merge(a, b), a) == merge(a, merge(b, a)));
    CHECK(merge(a, b).grand_total() == 3);
    CHECK(merge(a, b).total(10, 20) == 2);
    CHECK_THROWS_AS(merge(a, JointRadialHistogram(50)), Error);
    CHECK_THROWS_AS(merge(a, JointRadialHistogram(100, 0.5)), Error);
    CHECK_THROWS_AS(JointRadialHistogram::from_counts(2, 1.0, {1, 1, 1, 1}, {2, 0, 0, 0}), Error);
}

TEST_CASE("curve extraction") {
    JointRadialHistogram h;
    h.accumulate({0.505, 0.505, true});
    const CurveEstimate d = diagonal_curve(h);
    CHECK(d.size() == 100);
    for (std::size_t i = 0; i < d.size(); ++i) CHECK(d.probabilities[i].has_value() == (i == 50));
    CHECK(d.abscissae[50] == doctest::Approx(0.505));

    const CurveEstimate a = antidiagonal_curve(h);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a.abscissae[i] + h.midpoint(99 - static_cast<int>(i)) == doctest::Approx(1.0));
    }
    JointRadialHistogram g;
    g.accumulate({0.205, 0.795, true});
    g.accumulate({0.205, 0.795, false});
    CHECK(*antidiagonal_curve(g, Axis::A).probabilities[20] == 0.5);
    CHECK(*antidiagonal_curve(g, Axis::B).probabilities[79] == 0.5);
    CHECK(*column_curve(g, 79).probabilities[20] == 0.5);
    const CurveEstimate pooled = pooled_antidiagonal_curve(g);
    CHECK(pooled.counts[20] == 2);
    CHECK(pooled.counts[79] == 2);

    const CurveEstimate quasi = quasi_antidiagonal_curve(g, 0.435);
    CHECK(quasi.size() == 44);
    CHECK(quasi.abscissae.front() == doctest::Approx(0.005));
}

TEST_CASE("diagonal and antidiagonal agree with column extraction near the centre") {
    Sampler s(MeasureSpec{Family::XFlat, 4, 4, {2, 2}, 2, 0});
    JointRadialHistogram h;
    for (int k = 0; k < 200000; ++k) h.accumulate(s.next_radii());
    const CurveEstimate d = diagonal_curve(h), a = antidiagonal_curve(h);
    CHECK(d.counts[49] == column_curve(h, 49).counts[49]);
    CHECK(a.counts[49] == column_curve(h, 50).counts[49]);
    CHECK(a.counts[50] == column_curve(h, 49).counts[50]);
    CHECK(a.separable_counts[50] == column_curve(h, 49).separable_counts[50]);
}

TEST_CASE("marginals") {
    const JointRadialHistogram empty;
    const Marginal m = marginal(empty, Axis::A);
    CHECK(m.total.size() == 100);
    CHECK(std::all_of(m.total.begin(), m.total.end(), [](auto v) { return v == 0; }));
    CHECK(std::none_of(m.ratio.begin(), m.ratio.end(), [](auto v) { return v.has_value(); }));

    JointRadialHistogram h;
    h.accumulate({0.1, 0.9, true});
    h.accumulate({0.1, 0.2, false});
    const Marginal ma = marginal(h, Axis::A), mb = marginal(h, Axis::B);
    CHECK(ma.total[10] == 2);
    CHECK(*ma.ratio[10] == 0.5);
    CHECK(mb.total[90] == 1);
    CHECK(*mb.ratio[20] == 0.0);
}

TEST_CASE("marginal exponent of a synthetic power law") {
    const int n = 100;
    std::vector<std::uint64_t> tot(n * n, 0), sep(n * n, 0);
    for (int i = 0; i < n; ++i) {
        const double lo = static_cast<double>(i) / n, hi = (i + 1.0) / n;
        const double mass = (hi * hi * hi - lo * lo * lo) / 3.0;
        const double r = (i + 0.5) / n;
        tot[i * n] = static_cast<std::uint64_t>(std::llround(1e12 * mass * std::pow(1 - r * r, 6)));
    }
    const auto h = JointRadialHistogram::from_counts(n, 1.0, tot, sep);
    CHECK(marginal_exponent(h, Axis::A, 2) == doctest::Approx(6.0).epsilon(0.01));
}

TEST_CASE("raw crossover estimator") {
    CHECK_THROWS_AS(estimate_crossover(line([](double) { return 0.3; }), line([](double) { return 0.4; })), Error);
    const double r = estimate_crossover(line([](double x) { return x; }), line([](double) { return 0.45; }));
    CHECK(r == doctest::Approx(0.45).epsilon(1e-9));
    const double nearest = estimate_crossover(line([](double x) { return std::abs(x - 0.25) < 0.05 ? 0.7 : 0.2 + x; }),
                                              line([](double) { return 0.62; }));
    CHECK(nearest == doctest::Approx(0.42).epsilon(1e-6));
}

TEST_CASE("surface-fit crossover recovers the exact X-state value") {
    const CrossoverFit f = fit_crossover(exact_x_histogram());
    CHECK(std::abs(f.root - 0.40182804) < 1e-3);
    CHECK(f.standard_error < 1e-3);
    CHECK(f.points > 0);
}

TEST_CASE("surface-fit crossover reports the absence of a crossing") {
    const int n = 100;
    std::vector<std::uint64_t> tot(n * n, 1000000), sep(n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double s = (i + j + 1.0) / n;
            sep[i * n + j] = static_cast<std::uint64_t>(std::llround(1e6 * (0.8 - 0.3 * s)));
        }
    CHECK_THROWS_AS(fit_crossover(JointRadialHistogram::from_counts(n, 1.0, tot, sep)), Error);
    CHECK_THROWS_AS(fit_crossover(JointRadialHistogram()), Error);
}

TEST_CASE("correlation accumulator") {
    CorrelationAccumulator c;
    for (int k = 0; k < 5; ++k) c.add(0.3, 0.4);
    CHECK_THROWS_AS(c.pearson(), Error);
    CorrelationAccumulator one;
    one.add(0.1, 0.2);
    CHECK_THROWS_AS(one.pearson(), Error);

    CorrelationAccumulator all, left, right;
    for (int k = 0; k < 1000; ++k) {
        const double x = std::sin(k * 0.37), y = 0.5 * x + std::cos(k * 1.3);
        all.add(x, y);
        (k < 400 ? left : right).add(x, y);
    }
    left.merge(right);
    CHECK(left.count() == 1000);
    CHECK(left.pearson() == doctest::Approx(all.pearson()).epsilon(1e-12));

    std::vector<RadiusPair> pairs = {{0.1, 0.2, true}, {0.2, 0.4, false}, {0.3, 0.6, true}, {0.4, 0.5, true}};
    CHECK(sample_correlation(pairs, SampleFilter::All) == doctest::Approx(0.8315218406));
    std::vector<RadiusPair> line3 = {{0.1, 0.2, true}, {0.2, 0.4, false}, {0.3, 0.6, true}};
    CHECK(sample_correlation(line3, SampleFilter::Separable) == doctest::Approx(1.0));
}

TEST_CASE("spearman") {
    const std::vector<double> x = {1, 2, 3, 4, 5}, up = {2, 4, 9, 16, 30}, down = {5, 3, 2, 1, 0};
    CHECK(spearman(x, up) == doctest::Approx(1.0));
    CHECK(spearman(x, down) == doctest::Approx(-1.0));
    const std::vector<double> ties = {1, 1, 2, 3, 3};
    CHECK(spearman(x, ties) == doctest::Approx(0.9486832981));
}

TEST_CASE("csv round trip") {
    JointRadialHistogram h(7);
    h.accumulate({0.1, 0.9, true});
    h.accumulate({0.5, 0.5, false});
    std::stringstream t, s;
    write_counts_csv(t, h, false);
    write_counts_csv(s, h, true);
    int nt = 0, ns = 0;
    const auto tot = read_counts_csv(t, nt), sep = read_counts_csv(s, ns);
    CHECK(nt == 7);
    CHECK(ns == 7);
    CHECK(JointRadialHistogram::from_counts(7, 1.0, tot, sep) == h);

    std::stringstream bad("1,2\n3\n");
    int nb = 0;
    CHECK_THROWS_AS(read_counts_csv(bad, nb), Error);

    std::stringstream c;
    write_curve_csv(c, diagonal_curve(h));
    std::string header, row0, row3;
    std::getline(c, header);
    std::getline(c, row0);
    CHECK(header == "midpoint,probability,count");
    CHECK(row0.find(",,0") != std::string::npos);
    std::getline(c, row3);
    std::getline(c, row3);
    std::getline(c, row3);
    CHECK(row3.find(",0.000000000000,1") != std::string::npos);
}
