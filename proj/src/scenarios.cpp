#include "sepscan/scenarios.hpp"

#include "sepscan/error.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <mutex>
#include <thread>

namespace sepscan {

const char* code_version() { return "1.0.0"; }

const std::vector<ScenarioDefinition>& scenario_definitions() {
    static const std::vector<ScenarioDefinition> defs = [] {
        auto m = [](Family f, int N, int K, Split s) {
            MeasureSpec spec;
            spec.family = f;
            spec.N = N;
            spec.K = K;
            spec.split = s;
            return spec;
        };
        std::vector<ScenarioDefinition> d;
        d.push_back({"x-hs", m(Family::XFlat, 4, 4, {2, 2}), "two-qubit X states, Hilbert-Schmidt measure", true, 0, std::nullopt, true});
        d.push_back({"x-k5", m(Family::XInduced, 4, 5, {2, 2}), "two-qubit X states, induced measure K=5", true, 0, std::nullopt, true});
        d.push_back({"qubit-k3", m(Family::GinibreInduced, 4, 3, {2, 2}), "two qubits, induced measure K=3", true, 2, std::nullopt, true});
        d.push_back({"qubit-k4", m(Family::GinibreInduced, 4, 4, {2, 2}), "two qubits, Hilbert-Schmidt measure", true, 2, std::nullopt, true});
        d.push_back({"qubit-k5", m(Family::GinibreInduced, 4, 5, {2, 2}), "two qubits, induced measure K=5", true, 2, std::nullopt, true});
        d.push_back({"rebit", m(Family::RealHS, 4, 4, {2, 2}), "two rebits, Hilbert-Schmidt measure", true, 1, std::nullopt, true});
        d.push_back({"bures", m(Family::Bures, 4, 4, {2, 2}), "two qubits, Bures measure", true, 2, std::nullopt, true});
        d.push_back({"qutrit-hs", m(Family::GinibreInduced, 9, 9, {3, 3}), "two qutrits, Hilbert-Schmidt measure (PPT)",
                     true, 7, 0.435, false});
        d.push_back({"qutrit-k24", m(Family::GinibreInduced, 9, 24, {3, 3}), "two qutrits, induced measure K=24 (PPT)",
                     true, 7, 0.265, false});
        d.push_back({"qubitqutrit-hs", m(Family::GinibreInduced, 6, 6, {2, 3}), "qubit-qutrit, Hilbert-Schmidt measure",
                     false, 2, std::nullopt, false});
        return d;
    }();
    return defs;
}

const ScenarioDefinition& scenario_definition(const std::string& name) {
    for (const auto& d : scenario_definitions())
        if (d.name == name) return d;
    throw Error(ErrorKind::InvalidSpec, "unknown scenario '" + name + "'");
}

FractionEstimate fraction_of(std::uint64_t separable, std::uint64_t total) {
    FractionEstimate f;
    f.separable = separable;
    f.total = total;
    if (total > 0) {
        f.estimate = static_cast<double>(separable) / static_cast<double>(total);
        f.half_width = 3.0 * std::sqrt(f.estimate * (1.0 - f.estimate) / static_cast<double>(total));
    }
    return f;
}

const CurveEstimate& ScenarioReport::curve(const std::string& name) const {
    for (const auto& c : curves)
        if (c.name == name) return c.curve;
    throw Error(ErrorKind::NoData, "scenario " + spec.name + " has no curve '" + name + "'");
}

std::vector<NamedCurve> extract_curves(const ScenarioDefinition& def, const JointRadialHistogram& h,
                                       std::optional<double> offset) {
    std::vector<NamedCurve> out;
    out.push_back({"diagonal", "p(r, r)", diagonal_curve(h)});
    if (def.name == "qubitqutrit-hs") {
        out.push_back({"antidiagonal_by_B", "p(1 - R_B, R_B) along R_B", antidiagonal_curve(h, Axis::B)});
        out.push_back({"antidiagonal", "p(r_A, 1 - r_A) along r_A", antidiagonal_curve(h, Axis::A)});
    } else {
        out.push_back({"antidiagonal", "p(r, 1 - r)", antidiagonal_curve(h, Axis::A)});
    }
    if (def.exchange_symmetric && !def.default_offset)
        out.push_back({"antidiagonal_pooled", "p(r, 1 - r) pooled with p(1 - r, r)", pooled_antidiagonal_curve(h)});
    out.push_back({"half", "p(r, midpoint of column nbins/2)", column_curve(h, h.nbins() / 2)});
    if (const auto c = offset ? offset : def.default_offset) {
        char label[64];
        std::snprintf(label, sizeof label, "p(R, %.3f - R)", *c);
        out.push_back({"quasi_antidiagonal", label, quasi_antidiagonal_curve(h, *c)});
    }
    return out;
}

CrossoverResult estimate_crossovers(const ScenarioDefinition& def, const JointRadialHistogram& h,
                                    const std::vector<NamedCurve>& curves,
                                    const CrossoverFitOptions& opts) {
    auto find = [&](const std::string& n) -> const CurveEstimate* {
        for (const auto& c : curves)
            if (c.name == n) return &c.curve;
        return nullptr;
    };
    CrossoverResult res;
    const CurveEstimate* diag = find("diagonal");
    const CurveEstimate* anti = find("antidiagonal");
    if (!diag || !anti) return res;
    try {
        res.raw = estimate_crossover(*diag, *anti);
    } catch (const Error& e) {
        res.raw_error = e.what();
    }
    if (!def.crossover) return res;
    try {
        res.fit = fit_crossover(h, opts);
    } catch (const Error& e) {
        res.fit_error = e.what();
    }
    return res;
}

namespace {

struct BlockStats {
    CorrelationAccumulator all;
    CorrelationAccumulator sep;
};

}  // namespace

ScenarioReport run(const ScenarioSpec& spec, const ProgressFn& progress) {
    const ScenarioDefinition& def = scenario_definition(spec.name);
    if (spec.sample_count == 0) throw Error(ErrorKind::InvalidSpec, "sample_count must be positive");
    if (spec.block_size == 0) throw Error(ErrorKind::InvalidSpec, "block_size must be positive");
    if (spec.offset && !(*spec.offset > 0.0 && *spec.offset <= 2.0))
        throw Error(ErrorKind::InvalidSpec, "offset must lie in (0, 2]");

    const auto t0 = std::chrono::steady_clock::now();
    const std::uint64_t blocks = (spec.sample_count + spec.block_size - 1) / spec.block_size;
    unsigned workers = spec.workers ? spec.workers : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, blocks));

    MeasureSpec base = def.measure;
    base.seed = spec.seed;
    base.x_method = spec.x_method;
    validate_spec(base);

    std::vector<BlockStats> block_stats(blocks);
    std::vector<JointRadialHistogram> worker_hist(workers, JointRadialHistogram(spec.nbins, 1.0));
    std::vector<std::uint64_t> worker_prop(workers, 0), worker_acc(workers, 0);
    std::atomic<std::uint64_t> done{0};
    std::mutex progress_mutex;
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto work = [&](unsigned w) {
        try {
            for (std::uint64_t b = w; b < blocks; b += workers) {
                MeasureSpec ms = base;
                ms.stream = b;
                Sampler sampler(ms);
                const std::uint64_t begin = b * spec.block_size;
                const std::uint64_t n = std::min(spec.block_size, spec.sample_count - begin);
                BlockStats& st = block_stats[b];
                JointRadialHistogram& h = worker_hist[w];
                for (std::uint64_t i = 0; i < n; ++i) {
                    const RadiusPair p = sampler.next_radii();
                    h.accumulate(p);
                    st.all.add(p.rA, p.rB);
                    if (p.separable) st.sep.add(p.rA, p.rB);
                }
                worker_prop[w] += sampler.proposals();
                worker_acc[w] += sampler.accepted();
                const std::uint64_t total_done = done += n;
                if (progress) {
                    std::lock_guard lock(progress_mutex);
                    progress(total_done, spec.sample_count);
                }
            }
        } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
        }
    };

    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
        for (auto& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);

    ScenarioReport rep;
    rep.spec = spec;
    rep.definition = def;
    rep.workers = workers;
    rep.blocks = blocks;
    rep.histogram = JointRadialHistogram(spec.nbins, 1.0);
    for (unsigned w = 0; w < workers; ++w) {
        rep.histogram = merge(rep.histogram, worker_hist[w]);
        rep.proposals += worker_prop[w];
        rep.accepted += worker_acc[w];
    }
    for (const auto& st : block_stats) {
        rep.correlation_all.merge(st.all);
        rep.correlation_separable.merge(st.sep);
    }
    rep.fraction = fraction_of(rep.histogram.grand_separable(), rep.histogram.grand_total());
    rep.curves = extract_curves(def, rep.histogram, spec.offset);
    rep.crossover = estimate_crossovers(def, rep.histogram, rep.curves, spec.fit);
    rep.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

// ------------------------------------------------------------ fit checks

std::vector<FitReport> fit_checks(const std::string& scenario, const JointRadialHistogram& h, std::uint64_t min_count) {
    scenario_definition(scenario);
    std::vector<FitReport> out;
    const CurveEstimate diag = diagonal_curve(h);
    const CurveEstimate anti = antidiagonal_curve(h, Axis::A);
    const int col = h.nbins() / 2;
    const CurveEstimate half = column_curve(h, col);
    const double rb = h.midpoint(col);
    auto add = [&](auto&& f, const CurveEstimate& data, std::string name, bool empirical = false) {
        try {
            out.push_back(chi_squared(f, data, min_count, std::move(name), empirical));
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::NoData) throw;
        }
    };
    auto curve_fn = [](const PiecewiseCurve& c) { return [&c](double x) { return c(x); }; };
    if (scenario == "x-hs") {
        add(curve_fn(x_diag_curve()), diag, "x_diag");
        add(curve_fn(x_antidiag_curve()), anti, "x_antidiag");
        char name[48];
        std::snprintf(name, sizeof name, "x_prob(r, %.3f)", rb);
        add([rb](double x) { return x_prob(x, rb); }, half, name);
    } else if (scenario == "qubit-k3") {
        add(curve_fn(k3_diag_curve()), diag, "k3_diag");
        add(curve_fn(k3_antidiag_curve()), anti, "k3_antidiag");
    } else if (scenario == "qubit-k4") {
        add(curve_fn(k4_diag_curve()), diag, "k4_diag");
        add(curve_fn(k4_antidiag_curve()), anti, "k4_antidiag", true);
    } else if (scenario == "qubit-k5") {
        add(curve_fn(k5_diag_curve()), diag, "k5_diag");
    }
    return out;
}

// ------------------------------------------------------------------ JSON

nlohmann::json to_json(const FitReport& r) {
    return {{"formula", r.formula},       {"empirical", r.empirical}, {"statistic", r.statistic},
            {"dof", r.dof},               {"reduced", r.reduced()},   {"skipped", r.skipped},
            {"abscissae", r.abscissae},   {"residuals", r.residuals}};
}

namespace {

nlohmann::json correlation_json(const CorrelationAccumulator& acc) {
    try {
        return acc.pearson();
    } catch (const Error&) {
        return nullptr;
    }
}

nlohmann::json exponent_json(const ScenarioReport& r, Axis axis) {
    try {
        return marginal_exponent(r.histogram, axis, r.definition.jacobian_power);
    } catch (const Error&) {
        return nullptr;
    }
}

}  // namespace

nlohmann::json to_json(const ScenarioReport& r, bool include_runtime) {
    using nlohmann::json;
    const MeasureSpec& m = r.definition.measure;
    json j;
    j["scenario"] = r.spec.name;
    j["description"] = r.definition.description;
    j["code_version"] = code_version();
    j["spec"] = {{"family", to_string(m.family)},
                 {"N", m.N},
                 {"K", m.K},
                 {"split", {m.split.dA, m.split.dB}},
                 {"samples", r.spec.sample_count},
                 {"seed", r.spec.seed},
                 {"workers", r.workers},
                 {"block_size", r.spec.block_size},
                 {"blocks", r.blocks},
                 {"stream_partition", "block b uses stream b; worker w handles blocks w mod workers"},
                 {"nbins", r.spec.nbins},
                 {"x_method", r.spec.x_method == XMethod::Direct ? "direct" : "rejection"}};
    if (const auto c = r.spec.offset ? r.spec.offset : r.definition.default_offset) j["spec"]["offset"] = *c;
    j["fraction"] = {{"estimate", r.fraction.estimate},
                     {"separable", r.fraction.separable},
                     {"total", r.fraction.total},
                     {"ci_half_width", r.fraction.half_width},
                     {"ci", {r.fraction.estimate - r.fraction.half_width, r.fraction.estimate + r.fraction.half_width}}};
    json cross;
    cross["raw"] = r.crossover.raw ? json(*r.crossover.raw) : json(nullptr);
    if (!r.crossover.raw_error.empty()) cross["raw_error"] = r.crossover.raw_error;
    if (r.crossover.fit) {
        cross["fit"] = {{"root", r.crossover.fit->root},
                        {"standard_error", r.crossover.fit->standard_error},
                        {"reduced_chi2", r.crossover.fit->reduced_chi2},
                        {"points", r.crossover.fit->points},
                        {"window_lo", r.spec.fit.window_lo},
                        {"degree", r.spec.fit.degree},
                        {"band", r.spec.fit.band}};
    } else {
        cross["fit"] = nullptr;
    }
    if (!r.crossover.fit_error.empty()) cross["fit_error"] = r.crossover.fit_error;
    j["crossover"] = cross;
    j["correlation"] = {{"all", correlation_json(r.correlation_all)},
                        {"separable", correlation_json(r.correlation_separable)}};
    j["marginal_exponent"] = {{"jacobian_power", r.definition.jacobian_power},
                              {"A", exponent_json(r, Axis::A)},
                              {"B", exponent_json(r, Axis::B)}};
    if (r.proposals > 0) {
        j["sampler"] = {{"proposals", r.proposals},
                        {"accepted", r.accepted},
                        {"acceptance_rate", static_cast<double>(r.accepted) / static_cast<double>(r.proposals)}};
    }
    json curves = json::array();
    for (const auto& c : r.curves) curves.push_back({{"name", c.name}, {"description", c.description}, {"file", "curve_" + c.name + ".csv"}});
    j["curves"] = curves;
    if (include_runtime) j["runtime_seconds"] = r.runtime_seconds;
    return j;
}

// ------------------------------------------------------------- artifacts

namespace {

std::ofstream open_out(const std::filesystem::path& p) {
    std::ofstream os(p);
    if (!os) throw Error(ErrorKind::InvalidSpec, "cannot write " + p.string());
    return os;
}

}  // namespace

void write_artifacts(const ScenarioReport& r, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    {
        auto os = open_out(dir / "total.csv");
        write_counts_csv(os, r.histogram, false);
    }
    {
        auto os = open_out(dir / "separable.csv");
        write_counts_csv(os, r.histogram, true);
    }
    for (const auto& c : r.curves) {
        auto os = open_out(dir / ("curve_" + c.name + ".csv"));
        write_curve_csv(os, c.curve);
    }
    auto os = open_out(dir / "report.json");
    os << to_json(r).dump(2) << '\n';
}

JointRadialHistogram load_histogram(const std::filesystem::path& dir, double radius_scale) {
    auto read = [&](const char* file, int& n) {
        std::ifstream is(dir / file);
        if (!is) throw Error(ErrorKind::NoData, "cannot read " + (dir / file).string());
        return read_counts_csv(is, n);
    };
    int nt = 0, ns = 0;
    auto total = read("total.csv", nt);
    auto sep = read("separable.csv", ns);
    if (nt != ns) throw Error(ErrorKind::ShapeMismatch, "total and separable matrices differ in size");
    return JointRadialHistogram::from_counts(nt, radius_scale, std::move(total), std::move(sep));
}

}  // namespace sepscan
