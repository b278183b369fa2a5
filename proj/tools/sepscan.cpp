#include "sepscan/closedform.hpp"
#include "sepscan/error.hpp"
#include "sepscan/fits.hpp"
#include "sepscan/scenarios.hpp"
#include "sepscan/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace fs = std::filesystem;
using namespace sepscan;

namespace {

constexpr int kUsage = 2;

fs::path default_out(const std::string& scenario) {
    if (const char* env = std::getenv("SEPSCAN_OUT_DIR"); env && *env) return fs::path(env) / scenario;
    return fs::path("sepscan_out") / scenario;
}

struct Constant {
    std::string name;
    double value;
    std::string reference;
    double reference_numeric;
};

std::vector<Constant> exact_constants(double tol) {
    const Rational h(1, 2);
    std::vector<Constant> out;
    auto rat = [&](std::string name, const Rational& v, const char* reference) {
        out.push_back({std::move(name), to_double(v), reference, to_double(parse_rational(reference))});
    };
    auto num = [&](std::string name, double v, double reference) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.12g", reference);
        out.push_back({std::move(name), v, buf, reference});
    };
    rat("x_prob_half_half", x_prob(h, h), "139/384");
    rat("x_prob_0_0", x_prob(Rational(0), Rational(0)), "3/8");
    rat("x_prob_1_1", x_prob(Rational(1), Rational(1)), "0");
    rat("x_prob_0_1", x_prob(Rational(0), Rational(1)), "1/2");
    rat("xk5_half_at_half", xk5_half_curve().exact(h), "1261/2176");
    num("x_crossover", poly_root(x_crossover_quintic(), 0.3, 0.5), 0.40182804);
    num("xk5_crossover", poly_root(xk5_crossover_octic(), 0.3, 0.4), 0.3385355079);
    num("k3_crossover", poly_root(k3_crossover_quartic(), 0.4, 0.5), 0.487543066126);
    const ExtremumResult mx = curve_extremum(x_diag_curve(), 0.0, 1.0, Extremum::Max);
    num("x_diag_argmax", mx.x, 0.2722700792);
    num("x_diag_max", mx.value, 0.393558399);
    const ExtremumResult mn = curve_extremum(x_antidiag_curve(), 0.0, 1.0, Extremum::Min);
    num("x_antidiag_argmin", mn.x, 0.5);
    const double lo = poly_root(x_crossover_quintic(), 0.3, 0.5);
    const ExtremumResult gap = curve_extremum(x_diag_curve() - x_antidiag_curve(), lo, 0.5, Extremum::Max);
    num("x_crossover_gap", gap.value, 0.0056796160);
    num("x_crossover_gap_at", gap.x, 0.4564893379);
    const auto hd = intersect_curves(x_half_curve(), x_diag_curve(), 0.0, 0.5);
    const auto ha = intersect_curves(x_half_curve(), x_antidiag_curve(), 0.0, 0.5);
    if (!hd.empty()) num("x_half_diag_intersection", hd.front(), 0.364314);
    if (!ha.empty()) num("x_half_antidiag_intersection", ha.front(), 0.428908);
    const auto k4 = intersect_curves(k4_diag_curve(), k4_antidiag_curve(), 0.4, 0.5);
    if (!k4.empty()) num("k4_crossover", k4.front(), 0.453893);
    num("x_prob_integral", integrate_surface(x_prob_surface(), tol), 0.381678);
    num("x_correlation_all", x_correlation(VolumeFilter::All).unnormalized, 0.702341);
    num("x_correlation_separable", x_correlation(VolumeFilter::Separable).unnormalized, 0.68326);
    return out;
}

void print_fits(const std::vector<FitReport>& fits, const std::string& format) {
    if (format == "csv") {
        std::cout << "formula,empirical,statistic,dof,reduced_chi2,skipped\n";
        for (const auto& f : fits)
            std::cout << f.formula << ',' << (f.empirical ? 1 : 0) << ',' << f.statistic << ',' << f.dof << ','
                      << f.reduced() << ',' << f.skipped << '\n';
        return;
    }
    nlohmann::json j = nlohmann::json::array();
    for (const auto& f : fits) j.push_back(to_json(f));
    std::cout << j.dump(2) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Joint Bloch-radius separability scans of random bipartite states"};
    app.require_subcommand(1);

    std::string format = "json";
    double tol = 1e-9;
    std::uint64_t samples = 1'000'000;
    std::uint64_t seed = 1;
    unsigned workers = 0;
    int bins = 100;
    std::optional<double> offset;
    std::string out_dir;
    std::string scenario;
    std::uint64_t min_count = 200;
    std::string from_dir;

    auto add_run_opts = [&](CLI::App* sub) {
        sub->add_option("--samples", samples, "number of sampled states")->check(CLI::PositiveNumber);
        sub->add_option("--seed", seed, "random seed");
        sub->add_option("--workers", workers, "sampling threads (0 = all cores)");
        sub->add_option("--bins", bins, "bins per radius")->check(CLI::Range(2, 10000));
        sub->add_option("--offset", offset, "quasi-antidiagonal offset (qutrits)");
    };

    auto* sample = app.add_subcommand("sample", "sample a scenario and write histogram artifacts");
    sample->add_option("scenario", scenario, "scenario name")->required();
    add_run_opts(sample);
    sample->add_option("--out-dir", out_dir, "artifact directory (default $SEPSCAN_OUT_DIR/<scenario>)");

    auto* exact = app.add_subcommand("exact", "evaluate the closed-form constants");
    exact->add_option("--tol", tol, "quadrature absolute tolerance");
    exact->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));

    auto* fitcheck = app.add_subcommand("fitcheck", "chi-squared of closed forms against a histogram");
    fitcheck->add_option("scenario", scenario, "scenario name")->required();
    add_run_opts(fitcheck);
    fitcheck->add_option("--from-dir", from_dir, "use saved total.csv/separable.csv instead of sampling");
    fitcheck->add_option("--min-count", min_count, "skip bins with fewer samples");
    fitcheck->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));

    bool fast = false, full = false;
    std::vector<std::string> targets;
    double scale = 1.0;
    std::string json_path;
    auto* verify_cmd = app.add_subcommand("verify", "run the verification suite");
    auto* fast_flag = verify_cmd->add_flag("--fast", fast, "exact checks and a 10^6-sample smoke run (default)");
    verify_cmd->add_flag("--full", full, "every check at acceptance sample counts")->excludes(fast_flag);
    verify_cmd->add_option("--target", targets, "run only these checks");
    verify_cmd->add_option("--workers", workers, "sampling threads (0 = all cores)");
    verify_cmd->add_option("--seed", seed, "random seed");
    verify_cmd->add_option("--scale", scale, "multiply every sample count")->check(CLI::PositiveNumber);
    verify_cmd->add_option("--json", json_path, "also write the report as JSON");
    bool list = false;
    verify_cmd->add_flag("--list", list, "print the check names and exit");

    auto* curves = app.add_subcommand("curves", "re-extract curves from saved histogram CSVs");
    curves->add_option("scenario", scenario, "scenario name")->required();
    curves->add_option("--from-dir", from_dir, "directory holding total.csv/separable.csv");
    curves->add_option("--out-dir", out_dir, "where to write curve_*.csv (default: --from-dir)");
    curves->add_option("--offset", offset, "quasi-antidiagonal offset (qutrits)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kUsage;
    }

    try {
        if (sample->parsed()) {
            ScenarioSpec spec;
            spec.name = scenario;
            spec.sample_count = samples;
            spec.seed = seed;
            spec.workers = workers;
            spec.nbins = bins;
            spec.offset = offset;
            const ScenarioReport rep = run(spec);
            const fs::path dir = out_dir.empty() ? default_out(scenario) : fs::path(out_dir);
            write_artifacts(rep, dir);
            std::cout << to_json(rep).dump(2) << '\n';
            std::cerr << "artifacts written to " << dir.string() << '\n';
            return 0;
        }
        if (exact->parsed()) {
            const auto cs = exact_constants(tol);
            if (format == "csv") {
                std::cout << "name,value,paper_value,abs_err\n";
                for (const auto& c : cs) {
                    char buf[256];
                    std::snprintf(buf, sizeof buf, "%s,%.15g,%s,%.3g\n", c.name.c_str(), c.value,
                                  c.reference.c_str(), std::abs(c.value - c.reference_numeric));
                    std::cout << buf;
                }
            } else {
                nlohmann::json j = nlohmann::json::array();
                for (const auto& c : cs)
                    j.push_back({{"name", c.name},
                                 {"value", c.value},
                                 {"paper_value", c.reference},
                                 {"abs_err", std::abs(c.value - c.reference_numeric)}});
                std::cout << j.dump(2) << '\n';
            }
            return 0;
        }
        if (fitcheck->parsed()) {
            scenario_definition(scenario);
            JointRadialHistogram h;
            if (!from_dir.empty()) {
                h = load_histogram(from_dir);
            } else {
                ScenarioSpec spec;
                spec.name = scenario;
                spec.sample_count = samples;
                spec.seed = seed;
                spec.workers = workers;
                spec.nbins = bins;
                h = run(spec).histogram;
            }
            print_fits(fit_checks(scenario, h, min_count), format);
            return 0;
        }
        if (curves->parsed()) {
            const ScenarioDefinition& def = scenario_definition(scenario);
            const fs::path src = from_dir.empty() ? default_out(scenario) : fs::path(from_dir);
            const fs::path dst = out_dir.empty() ? src : fs::path(out_dir);
            const JointRadialHistogram h = load_histogram(src);
            fs::create_directories(dst);
            for (const auto& c : extract_curves(def, h, offset ? offset : def.default_offset)) {
                const fs::path file = dst / ("curve_" + c.name + ".csv");
                std::ofstream os(file);
                if (!os) throw Error(ErrorKind::Parse, "cannot write " + file.string());
                write_curve_csv(os, c.curve);
                std::cout << file.string() << '\n';
            }
            return 0;
        }
        if (verify_cmd->parsed()) {
            VerifyOptions opts;
            opts.profile = full ? VerifyProfile::Full : VerifyProfile::Fast;
            opts.workers = workers;
            opts.seed = seed;
            opts.sample_scale = scale;
            if (targets.empty()) targets = verification_targets(opts.profile);
            if (list) {
                for (const auto& t : targets) std::cout << criterion_of(t) << ' ' << t << '\n';
                return 0;
            }
            opts.log = [](const std::string& s) { std::cerr << s << '\n'; };
            opts.on_result = [](const VerificationReport& r) {
                std::printf("[%s] %2d %-26s %s\n", r.passed ? "PASS" : "FAIL", r.criterion, r.name.c_str(),
                            r.detail.c_str());
                std::fflush(stdout);
            };
            const auto reports = verify(targets, opts);
            bool ok = true;
            nlohmann::json j = nlohmann::json::array();
            for (const auto& r : reports) {
                ok = ok && r.passed;
                j.push_back(to_json(r));
            }
            if (!json_path.empty()) {
                std::ofstream os(json_path);
                if (!os) throw Error(ErrorKind::Parse, "cannot write " + json_path);
                os << j.dump(2) << '\n';
            }
            return ok ? 0 : 1;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        if (e.kind() == ErrorKind::InvalidSpec) {
            std::cerr << app.help();
            return kUsage;
        }
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return kUsage;
}
