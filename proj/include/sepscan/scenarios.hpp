#pragma once

#include "sepscan/fits.hpp"
#include "sepscan/histogram.hpp"
#include "sepscan/measures.hpp"

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace sepscan {

/// Fixed properties of a named experiment.
struct ScenarioDefinition {
    std::string name;
    MeasureSpec measure;
    std::string description;
    /// Invariant under exchange of the two subsystems (pooled antidiagonal allowed).
    bool exchange_symmetric = true;
    /// Power of r in the volume element of the reduced Bloch-vector space.
    int jacobian_power = 2;
    /// Default quasi-antidiagonal offset (qutrit scenarios only).
    std::optional<double> default_offset;
    /// Whether the crossover estimators are meaningful for this scenario.
    bool crossover = true;
};

const std::vector<ScenarioDefinition>& scenario_definitions();
/// Throws InvalidSpec for unknown names.
const ScenarioDefinition& scenario_definition(const std::string& name);

struct ScenarioSpec {
    std::string name;
    std::uint64_t sample_count = 1'000'000;
    std::uint64_t seed = 1;
    /// 0 means std::thread::hardware_concurrency().
    unsigned workers = 0;
    int nbins = 100;
    std::optional<double> offset;
    /// Samples per random stream.  Block b draws from stream b; worker w
    /// handles blocks w, w + workers, ...  Results do not depend on the
    /// worker count.
    std::uint64_t block_size = 1 << 16;
    XMethod x_method = XMethod::Direct;
    CrossoverFitOptions fit{};
};

struct FractionEstimate {
    std::uint64_t separable = 0;
    std::uint64_t total = 0;
    double estimate = 0.0;
    /// 3 sqrt(p (1 - p) / n).
    double half_width = 0.0;
};

FractionEstimate fraction_of(std::uint64_t separable, std::uint64_t total);

struct NamedCurve {
    std::string name;
    std::string description;
    CurveEstimate curve;
};

struct CrossoverResult {
    std::optional<double> raw;
    std::string raw_error;
    std::optional<CrossoverFit> fit;
    std::string fit_error;
};

struct ScenarioReport {
    ScenarioSpec spec;
    ScenarioDefinition definition;
    unsigned workers = 1;
    std::uint64_t blocks = 0;
    JointRadialHistogram histogram;
    std::vector<NamedCurve> curves;
    FractionEstimate fraction;
    CrossoverResult crossover;
    CorrelationAccumulator correlation_all;
    CorrelationAccumulator correlation_separable;
    std::uint64_t proposals = 0;
    std::uint64_t accepted = 0;
    double runtime_seconds = 0.0;

    const CurveEstimate& curve(const std::string& name) const;
};

using ProgressFn = std::function<void(std::uint64_t done, std::uint64_t total)>;

/// Samples, bins, extracts curves and estimates the crossover.
ScenarioReport run(const ScenarioSpec& spec, const ProgressFn& progress = {});

/// Curves of a scenario from its histogram: "diagonal", "antidiagonal",
/// "half" (column nbins/2); "antidiagonal_pooled" for exchange-symmetric
/// scenarios; "quasi_antidiagonal" for qutrits; "antidiagonal_by_B" for the
/// qubit-qutrit scenario.
std::vector<NamedCurve> extract_curves(const ScenarioDefinition& def, const JointRadialHistogram& h,
                                       std::optional<double> offset);

/// Raw interpolation on the extracted curves; surface fit on the histogram
/// when the scenario supports it.
CrossoverResult estimate_crossovers(const ScenarioDefinition& def, const JointRadialHistogram& h,
                                    const std::vector<NamedCurve>& curves,
                                    const CrossoverFitOptions& opts);

/// Goodness of fit of every closed-form or fitted curve available for the
/// scenario against its histogram.
std::vector<FitReport> fit_checks(const std::string& scenario, const JointRadialHistogram& h,
                                  std::uint64_t min_count = 1);

nlohmann::json to_json(const FitReport& r);
nlohmann::json to_json(const ScenarioReport& r, bool include_runtime = true);

/// Writes total.csv, separable.csv, curve_<name>.csv and report.json.
void write_artifacts(const ScenarioReport& r, const std::filesystem::path& dir);
/// Reads total.csv and separable.csv back.
JointRadialHistogram load_histogram(const std::filesystem::path& dir, double radius_scale = 1.0);

/// Library version string recorded in reports.
const char* code_version();

}  // namespace sepscan
