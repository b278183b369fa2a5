// Acceptance run: every check of the full verification profile, summarized
// as one line per criterion.  Pass --fast for the exact checks only.

#include "sepscan/verify.hpp"

#include <cstdio>
#include <cstring>
#include <map>
#include <string>
#include <vector>

using namespace sepscan;

int main(int argc, char** argv) {
    const bool fast = argc > 1 && std::strcmp(argv[1], "--fast") == 0;
    VerifyOptions opts;
    opts.profile = fast ? VerifyProfile::Fast : VerifyProfile::Full;
    opts.log = [](const std::string& s) { std::fprintf(stderr, "%s\n", s.c_str()); };
    opts.on_result = [](const VerificationReport& r) {
        std::printf("    %s %-26s %.1fs  %s\n", r.passed ? "ok  " : "FAIL", r.name.c_str(), r.seconds, r.detail.c_str());
        std::fflush(stdout);
    };

    const auto reports = verify(verification_targets(opts.profile), opts);

    std::map<int, std::vector<const VerificationReport*>> by;
    for (const auto& r : reports) by[r.criterion].push_back(&r);

    static const char* titles[] = {"",
                                   "X-state probability surface special values",
                                   "crossover polynomial roots",
                                   "diagonal maximum and crossover gap",
                                   "r_B = 1/2 section intersections",
                                   "surface integral and radius correlation",
                                   "marginal identity",
                                   "fit-formula self-consistency",
                                   "overall separable fractions",
                                   "per-bin curve agreement",
                                   "Monte Carlo crossover estimates and ordering",
                                   "Bures: no crossover, decreasing univariate probability",
                                   "marginal exponents",
                                   "qutrit and qubit-qutrit"};
    std::printf("\n");
    int failed = 0;
    for (int c = 1; c <= 13; ++c) {
        auto it = by.find(c);
        if (it == by.end()) {
            std::printf("criterion %2d: SKIP  %s (not in this profile)\n", c, titles[c]);
            continue;
        }
        bool ok = true;
        std::string bad;
        for (const auto* r : it->second) {
            ok = ok && r->passed;
            if (!r->passed) bad += (bad.empty() ? "" : ", ") + r->name;
        }
        if (!ok) ++failed;
        std::printf("criterion %2d: %s  %s%s%s\n", c, ok ? "PASS" : "FAIL", titles[c], ok ? "" : " -- failed: ",
                    bad.c_str());
    }
    return failed == 0 ? 0 : 1;
}
