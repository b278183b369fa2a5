#pragma once

#include "sepscan/scenarios.hpp"

#include <functional>
#include <string>
#include <vector>

#include "json.hpp"

namespace sepscan {

struct VerificationReport {
    std::string name;
    int criterion = 0;
    bool passed = false;
    nlohmann::json measured;
    nlohmann::json expected;
    std::string detail;
    double seconds = 0.0;
};

enum class VerifyProfile {
    Fast,  ///< exact checks plus a 10^6-sample smoke test
    Full,  ///< every check at its acceptance sample count
};

struct VerifyOptions {
    VerifyProfile profile = VerifyProfile::Fast;
    unsigned workers = 0;
    std::uint64_t seed = 1;
    /// Multiplies every Monte Carlo sample count (for plumbing tests).
    double sample_scale = 1.0;
    std::function<void(const VerificationReport&)> on_result;
    std::function<void(const std::string&)> log;
};

/// Names of the checks of a profile, in execution order.
std::vector<std::string> verification_targets(VerifyProfile profile);
/// Criterion number (1-13) a check belongs to; throws InvalidSpec for unknown names.
int criterion_of(const std::string& target);

/// Runs the named checks.  Failures, including thrown errors, become report
/// entries; unknown names throw InvalidSpec before anything runs.
std::vector<VerificationReport> verify(const std::vector<std::string>& targets, const VerifyOptions& opts = {});

nlohmann::json to_json(const VerificationReport& r);

}  // namespace sepscan
