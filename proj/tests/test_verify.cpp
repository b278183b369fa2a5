#include "doctest.h"

#include "sepscan/error.hpp"
#include "sepscan/verify.hpp"

#include <set>

using namespace sepscan;

TEST_CASE("profiles") {
    const auto fast = verification_targets(VerifyProfile::Fast);
    const auto full = verification_targets(VerifyProfile::Full);
    CHECK(fast.size() == 13);
    CHECK(full.size() > fast.size());
    std::set<int> criteria;
    for (const auto& t : full) criteria.insert(criterion_of(t));
    CHECK(criteria.size() == 13);
    CHECK(criterion_of("x-integral") == 5);
    CHECK_THROWS_AS(criterion_of("nope"), Error);
}

TEST_CASE("empty target list gives an empty report") { CHECK(verify({}).empty()); }

TEST_CASE("unknown targets are rejected before running") {
    int calls = 0;
    VerifyOptions o;
    o.on_result = [&](const VerificationReport&) { ++calls; };
    CHECK_THROWS_AS(verify({"x-crossover", "bogus"}, o), Error);
    CHECK(calls == 0);
}

TEST_CASE("exact checks pass") {
    std::vector<std::string> exact;
    for (const auto& t : verification_targets(VerifyProfile::Fast))
        if (criterion_of(t) <= 7) exact.push_back(t);
    const auto reports = verify(exact);
    REQUIRE(reports.size() == exact.size());
    for (const auto& r : reports) {
        INFO(r.name, ": ", r.detail);
        CHECK(r.passed);
        const auto j = to_json(r);
        CHECK(j["name"] == r.name);
        CHECK(j.contains("measured"));
    }
    const auto x = verify({"x-crossover"});
    CHECK(x[0].measured.get<double>() == doctest::Approx(0.40182804).epsilon(1e-8));
}

TEST_CASE("Monte Carlo checks run at reduced scale") {
    VerifyOptions o;
    o.sample_scale = 1e-3;
    o.workers = 1;
    const auto r = verify({"fraction-x-hs", "exponent-x-hs", "qutrit-k24"}, o);
    REQUIRE(r.size() == 3);
    for (const auto& v : r) CHECK(v.detail.find("error") == std::string::npos);
    CHECK(r[0].measured.is_number());
}
