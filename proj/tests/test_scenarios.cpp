#include "doctest.h"

#include "sepscan/closedform.hpp"
#include "sepscan/error.hpp"
#include "sepscan/scenarios.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace sepscan;
namespace fs = std::filesystem;

namespace {

ScenarioSpec small(const std::string& name, std::uint64_t n, unsigned workers = 1, std::uint64_t block = 1 << 16) {
    ScenarioSpec s;
    s.name = name;
    s.sample_count = n;
    s.workers = workers;
    s.block_size = block;
    return s;
}

std::string slurp(const fs::path& p) {
    std::ifstream is(p);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("scenario table") {
    CHECK(scenario_definitions().size() == 10);
    const auto& q = scenario_definition("qutrit-k24");
    CHECK(q.measure.N == 9);
    CHECK(q.measure.K == 24);
    CHECK(q.measure.split == Split{3, 3});
    CHECK(scenario_definition("qubitqutrit-hs").measure.split == Split{2, 3});
    CHECK_FALSE(scenario_definition("qubitqutrit-hs").exchange_symmetric);
    CHECK(scenario_definition("x-k5").measure.family == Family::XInduced);
    CHECK(scenario_definition("rebit").measure.family == Family::RealHS);
    CHECK_THROWS_AS(scenario_definition("qubit-k9"), Error);
}

TEST_CASE("fraction estimate") {
    const FractionEstimate f = fraction_of(40, 100);
    CHECK(f.estimate == doctest::Approx(0.4));
    CHECK(f.half_width == doctest::Approx(3 * std::sqrt(0.24 / 100)));
    CHECK(fraction_of(0, 0).estimate == 0.0);
}

TEST_CASE("results do not depend on the worker count") {
    const ScenarioReport a = run(small("qubit-k4", 20000, 1, 1000));
    const ScenarioReport b = run(small("qubit-k4", 20000, 3, 1000));
    CHECK(a.histogram == b.histogram);
    CHECK(a.blocks == 20);
    CHECK(a.correlation_all.pearson() == b.correlation_all.pearson());
    CHECK(a.fraction.separable == b.fraction.separable);
    CHECK(to_json(a, false) != nlohmann::json());
    auto ja = to_json(a, false), jb = to_json(b, false);
    ja["spec"]["workers"] = jb["spec"]["workers"] = 0;
    CHECK(ja == jb);
}

TEST_CASE("runs are reproducible and seeds matter") {
    const ScenarioReport a = run(small("x-hs", 5000));
    const ScenarioReport b = run(small("x-hs", 5000));
    CHECK(a.histogram == b.histogram);
    auto s = small("x-hs", 5000);
    s.seed = 2;
    CHECK_FALSE(run(s).histogram == a.histogram);
    CHECK(a.histogram.grand_total() == 5000);
}

TEST_CASE("curves emitted per scenario") {
    const ScenarioReport x = run(small("x-hs", 2000));
    for (const char* n : {"diagonal", "antidiagonal", "antidiagonal_pooled", "half"}) CHECK_NOTHROW(x.curve(n));
    CHECK_THROWS_AS(x.curve("quasi_antidiagonal"), Error);

    const ScenarioReport qq = run(small("qubitqutrit-hs", 2000));
    for (const char* n : {"diagonal", "antidiagonal", "antidiagonal_by_B"}) CHECK_NOTHROW(qq.curve(n));
    CHECK_THROWS_AS(qq.curve("antidiagonal_pooled"), Error);

    const ScenarioReport q = run(small("qutrit-hs", 500));
    CHECK(q.curve("quasi_antidiagonal").size() == 44);
    CHECK(q.definition.default_offset == doctest::Approx(0.435));
}

TEST_CASE("X-state Hilbert-Schmidt run at 10^6") {
    const ScenarioReport r = run(small("x-hs", 1000000));
    CHECK(std::abs(r.fraction.estimate - 0.4) <= r.fraction.half_width);
    // Pearson correlation of the radii under the normalized density.
    CHECK(std::abs(r.correlation_all.pearson() - x_correlation(VolumeFilter::All).pearson) < 0.005);
    CHECK(std::abs(r.correlation_separable.pearson() - x_correlation(VolumeFilter::Separable).pearson) < 0.005);
    const CurveEstimate& d = r.curve("diagonal");
    const double p0 = *d.probabilities[0];
    const double sd0 = std::sqrt(0.375 * 0.625 / static_cast<double>(d.counts[0]));
    CHECK(std::abs(p0 - 0.375) < 4 * sd0 + 0.01);
    const CurveEstimate& a = r.curve("antidiagonal");
    const double sda = std::sqrt(0.25 / static_cast<double>(a.counts[0]));
    CHECK(std::abs(*a.probabilities[0] - 0.5) < 4 * sda + 0.01);
}

TEST_CASE("histogram symmetry for exchange-symmetric measures") {
    const ScenarioReport r = run(small("qubit-k4", 300000));
    const auto& h = r.histogram;
    double worst = 0.0;
    for (int i = 0; i < h.nbins(); ++i)
        for (int j = i + 1; j < h.nbins(); ++j) {
            const double a = static_cast<double>(h.total(i, j)), b = static_cast<double>(h.total(j, i));
            worst = std::max(worst, std::abs(a - b) / std::sqrt(a + b + 1));
        }
    CHECK(worst < 5.0);
}

TEST_CASE("fit checks") {
    const ScenarioReport r = run(small("x-hs", 200000));
    const auto fits = fit_checks("x-hs", r.histogram, 10);
    REQUIRE(fits.size() == 3);
    for (const auto& f : fits) {
        INFO(f.formula);
        CHECK(f.reduced() < 2.0);
        CHECK(f.dof > 0);
    }
    CHECK(fit_checks("bures", r.histogram).empty());
    const auto k4 = fit_checks("qubit-k4", r.histogram);
    REQUIRE(k4.size() == 2);
    CHECK(k4[1].empirical);
}

TEST_CASE("artifacts round trip") {
    const fs::path dir = fs::temp_directory_path() / "sepscan_test_artifacts";
    fs::remove_all(dir);
    const ScenarioReport r = run(small("qubit-k3", 3000));
    write_artifacts(r, dir);
    for (const char* f : {"total.csv", "separable.csv", "curve_diagonal.csv", "curve_antidiagonal.csv", "report.json"})
        CHECK(fs::exists(dir / f));
    CHECK(load_histogram(dir) == r.histogram);
    const auto j = nlohmann::json::parse(slurp(dir / "report.json"));
    CHECK(j["scenario"] == "qubit-k3");
    CHECK(j["fraction"]["total"] == 3000);
    CHECK(j["code_version"] == code_version());
    CHECK(j.contains("runtime_seconds"));
    CHECK_FALSE(to_json(r, false).contains("runtime_seconds"));

    const std::string before = slurp(dir / "total.csv");
    write_artifacts(run(small("qubit-k3", 3000)), dir);
    CHECK(slurp(dir / "total.csv") == before);
    fs::remove_all(dir);
    CHECK_THROWS_AS(load_histogram(dir), Error);
}
