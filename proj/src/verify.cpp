#include "sepscan/verify.hpp"

#include "sepscan/closedform.hpp"
#include "sepscan/error.hpp"
#include "sepscan/fits.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <map>
#include <numbers>

namespace sepscan {

namespace {

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

bool within(double x, double target, double tol) { return std::abs(x - target) <= tol; }

// Acceptance sample counts.
constexpr std::uint64_t kFractionSamples = 10'000'000;
constexpr std::uint64_t kSmokeSamples = 1'000'000;
constexpr std::uint64_t kQutritK24Samples = 1'000'000;
constexpr std::uint64_t kQutritHsSamples = 10'000'000;
constexpr std::uint64_t kQubitQutritSamples = 10'000'000;
constexpr std::uint64_t kBuresSamples = 100'000'000;

std::uint64_t crossover_samples(const std::string& scenario) {
    static const std::map<std::string, std::uint64_t> n{
        {"x-hs", 100'000'000}, {"x-k5", 100'000'000},  {"qubit-k3", 100'000'000},
        {"qubit-k4", 100'000'000}, {"qubit-k5", 100'000'000}, {"rebit", 100'000'000}};
    return n.at(scenario);
}

class Context {
public:
    explicit Context(const VerifyOptions& o) : opts(o) {}

    const ScenarioReport& scenario(const std::string& name, std::uint64_t full_count) {
        const std::uint64_t n = scaled(full_count);
        const auto key = std::make_pair(name, n);
        auto it = runs_.find(key);
        if (it != runs_.end()) return it->second;
        if (opts.log) opts.log(fmt("sampling %s: %llu states", name.c_str(), static_cast<unsigned long long>(n)));
        ScenarioSpec spec;
        spec.name = name;
        spec.sample_count = n;
        spec.seed = opts.seed;
        spec.workers = opts.workers;
        ScenarioReport rep = run(spec);
        if (opts.log) opts.log(fmt("  done in %.1f s", rep.runtime_seconds));
        return runs_.emplace(key, std::move(rep)).first->second;
    }

    std::uint64_t scaled(std::uint64_t n) const {
        return std::max<std::uint64_t>(1000, static_cast<std::uint64_t>(std::llround(n * opts.sample_scale)));
    }

    const VerifyOptions& opts;

private:
    std::map<std::pair<std::string, std::uint64_t>, ScenarioReport> runs_;
};

using CheckFn = std::function<void(Context&, VerificationReport&)>;

struct Check {
    std::string name;
    int criterion;
    bool fast;
    bool full;
    CheckFn fn;
};

// ---------------------------------------------------------- exact checks

void check_prob_points(Context&, VerificationReport& r) {
    const Rational h(1, 2);
    const Rational v_hh = x_prob(h, h), v00 = x_prob(Rational(0), Rational(0)), v11 = x_prob(Rational(1), Rational(1)),
                   v01 = x_prob(Rational(0), Rational(1)), v10 = x_prob(Rational(1), Rational(0));
    r.measured = {{"(1/2,1/2)", to_string(v_hh)}, {"(0,0)", to_string(v00)}, {"(1,1)", to_string(v11)},
                  {"(0,1)", to_string(v01)}, {"(1,0)", to_string(v10)}};
    r.expected = {{"(1/2,1/2)", "139/384"}, {"(0,0)", "3/8"}, {"(1,1)", "0"}, {"(0,1)", "1/2"}, {"(1,0)", "1/2"}};
    r.passed = v_hh == Rational(139, 384) && v00 == Rational(3, 8) && v11 == 0 && v01 == h && v10 == h;
    r.detail = "exact rational arithmetic";
}

void root_check(VerificationReport& r, const Poly1& p, double lo, double hi, double target) {
    const RootEnclosure e = poly_root_enclosure(p, exact(lo), exact(hi), 1e-12);
    const double root = e.midpoint();
    const bool rigorous = e.lo == e.hi || p.sign_at(e.lo) * p.sign_at(e.hi) < 0;
    r.measured = root;
    r.expected = target;
    r.passed = within(root, target, 1e-7) && rigorous;
    r.detail = fmt("root of %s on [%g, %g]; enclosure width %.1e, endpoint signs straddle zero: %s", p.str().c_str(),
                   lo, hi, to_double(e.hi - e.lo), rigorous ? "yes" : "no");
}

void check_x_crossover(Context&, VerificationReport& r) { root_check(r, x_crossover_quintic(), 0.3, 0.5, 0.40182804); }
void check_xk5_crossover(Context&, VerificationReport& r) {
    root_check(r, xk5_crossover_octic(), 0.3, 0.4, 0.3385355079);
}
void check_k3_crossover(Context&, VerificationReport& r) {
    root_check(r, k3_crossover_quartic(), 0.4, 0.5, 0.487543066126);
}

void check_diag_max(Context&, VerificationReport& r) {
    const ExtremumResult e = curve_extremum(x_diag_curve(), 0.0, 1.0, Extremum::Max);
    const Poly1 cubic_arg{std::vector<Rational>{-1, 1, 9, 3}};
    const Poly1 cubic_val{std::vector<Rational>{-9, -28, 108, 54}};
    const double arg_root = poly_root(cubic_arg, 0.0, 1.0);
    const double val_root = poly_root(cubic_val, 0.0, 1.0);
    r.measured = {{"argmax", e.x}, {"max", e.value}};
    r.expected = {{"argmax", 0.2722700792}, {"max", 0.393558399}};
    r.passed = within(e.x, 0.2722700792, 1e-8) && within(e.value, 0.393558399, 1e-8) && within(e.x, arg_root, 1e-9) &&
               within(e.value, val_root, 1e-9);
    r.detail = fmt("argmax %.12f (cubic root %.12f), max %.12f (cubic root %.12f)", e.x, arg_root, e.value, val_root);
}

void check_gap(Context&, VerificationReport& r) {
    const double lo = poly_root(x_crossover_quintic(), 0.3, 0.5);
    const ExtremumResult e = curve_extremum(x_diag_curve() - x_antidiag_curve(), lo, 0.5, Extremum::Max);
    r.measured = {{"gap", e.value}, {"at", e.x}};
    r.expected = {{"gap", 0.0056796160}, {"at", 0.4564893379}};
    r.passed = within(e.value, 0.0056796160, 1e-8) && within(e.x, 0.4564893379, 1e-8);
    r.detail = fmt("max of x_diag - x_antidiag on [%.10f, 1/2]", lo);
}

void check_half_intersections(Context&, VerificationReport& r) {
    const auto hd = intersect_curves(x_half_curve(), x_diag_curve(), 0.0, 0.5);
    const auto ha = intersect_curves(x_half_curve(), x_antidiag_curve(), 0.0, 0.5);
    const double q5 = poly_root(half_diag_quintic(), 0.3, 0.4);
    const double q6 = poly_root(half_antidiag_sextic(), 0.4, 0.45);
    const Rational h(1, 2);
    const bool meet = x_half_curve().exact(h) == x_diag_curve().exact(h) &&
                      x_diag_curve().exact(h) == x_antidiag_curve().exact(h);
    r.measured = {{"half_vs_diag", hd}, {"half_vs_antidiag", ha}};
    r.expected = {{"half_vs_diag", {0.364314}}, {"half_vs_antidiag", {0.428908}}};
    r.passed = hd.size() == 1 && ha.size() == 1 && within(hd[0], 0.364314, 1e-5) && within(ha[0], 0.428908, 1e-5) &&
               within(hd[0], q5, 1e-9) && within(ha[0], q6, 1e-9) && meet;
    r.detail = fmt("quintic root %.10f, sextic root %.10f; all three curves equal 139/384 at 1/2: %s", q5, q6,
                   meet ? "yes" : "no");
}

void check_integral(Context&, VerificationReport& r) {
    const double v = integrate_surface(x_prob_surface(), 1e-9);
    r.measured = v;
    r.expected = 0.381678;
    r.passed = within(v, 0.381678, 1e-4);
    r.detail = fmt("integral of x_prob over the unit square = %.10f", v);
}

void check_correlation(Context&, VerificationReport& r) {
    const CorrelationResult all = x_correlation(VolumeFilter::All);
    const CorrelationResult sep = x_correlation(VolumeFilter::Separable);
    r.measured = {{"all", all.unnormalized}, {"separable", sep.unnormalized}};
    r.expected = {{"all", 0.702341}, {"separable", 0.68326}};
    r.passed = within(all.unnormalized, 0.702341, 1e-5) && within(sep.unnormalized, 0.68326, 1e-5) &&
               within(all.unnormalized, *all.closed_form, 1e-9) && within(sep.unnormalized, *sep.closed_form, 1e-9);
    r.detail = fmt("unnormalized-moment correlation; closed forms %.9f / %.9f; Pearson under the normalized "
                   "density %.9f / %.9f",
                   *all.closed_form, *sep.closed_form, all.pearson, sep.pearson);
}

void check_marginal(Context&, VerificationReport& r) {
    using boost::math::quadrature::gauss_kronrod;
    double worst = 0.0;
    nlohmann::json pts = nlohmann::json::array();
    for (int k = 1; k <= 9; ++k) {
        const double a = k / 10.0;
        auto f = [a](double b) { return x_total(a, b); };
        const double v = gauss_kronrod<double, 31>::integrate(f, 0.0, a, 10, 1e-14) +
                         gauss_kronrod<double, 31>::integrate(f, a, 1.0, 10, 1e-14);
        const double err = std::abs(v - x_marginal(a));
        worst = std::max(worst, err);
        pts.push_back({{"rA", a}, {"integral", v}, {"marginal", x_marginal(a)}});
    }
    r.measured = worst;
    r.expected = "max abs error <= 1e-9";
    r.passed = worst <= 1e-9;
    r.detail = fmt("max |int x_total drB - pi^2 (1 - rA^2)^3 / 2304| over rA = 0.1..0.9: %.2e", worst);
}

void check_fit_consistency(Context&, VerificationReport& r) {
    const RationalFunction1 eq10 = k3_sep_surface().diagonal();
    const RationalFunction1 eq9 = k3_total_surface().diagonal();
    const bool k3 = same_function(eq10 / eq9, k3_diag_curve().pieces()[0].f);
    const bool k4 = same_function(diagonal_volumes(4).separable / diagonal_volumes(4).total,
                                  k4_diag_curve().pieces()[0].f);
    const bool k5 = same_function(diagonal_volumes(5).separable / diagonal_volumes(5).total,
                                  k5_diag_curve().pieces()[0].f);
    const auto& pieces = k3_antidiag_curve().pieces();
    const Rational h(1, 2);
    const double jump = std::abs(to_double(pieces[0].f(h) - pieces[1].f(h)));
    const Poly1 t = Poly1::x();
    const bool anti = same_function(k3_prob_surface().along(t, 1 - t, false), pieces[0].f) &&
                      same_function(k3_prob_surface().along(t, 1 - t, true), pieces[1].f);
    r.measured = {{"k3_diag_ratio", k3}, {"k4_diag_ratio", k4}, {"k5_diag_ratio", k5}, {"k3_antidiag_jump", jump},
                  {"k3_antidiag_is_surface_ratio", anti}};
    r.expected = {{"k3_diag_ratio", true}, {"k4_diag_ratio", true}, {"k5_diag_ratio", true},
                  {"k3_antidiag_jump", "<= 1e-9"}, {"k3_antidiag_is_surface_ratio", true}};
    r.passed = k3 && k4 && k5 && jump <= 1e-9 && anti;
    r.detail = "identities checked as exact rational-function equalities";
}

// ---------------------------------------------------------------- Monte Carlo

void fraction_check(Context& ctx, VerificationReport& r, const std::string& scenario, std::uint64_t n, double target,
                    const char* label) {
    const ScenarioReport& rep = ctx.scenario(scenario, n);
    const double nn = static_cast<double>(rep.fraction.total);
    const double sigma = std::sqrt(target * (1.0 - target) / nn);
    r.measured = rep.fraction.estimate;
    r.expected = target;
    r.passed = within(rep.fraction.estimate, target, 3.0 * sigma);
    r.detail = fmt("%s: %llu of %llu separable; |p - %s| = %.2e, 3 sigma = %.2e", scenario.c_str(),
                   static_cast<unsigned long long>(rep.fraction.separable),
                   static_cast<unsigned long long>(rep.fraction.total), label,
                   std::abs(rep.fraction.estimate - target), 3.0 * sigma);
}

CheckFn fraction(const std::string& scenario, double target, const char* label, bool smoke = false) {
    return [=](Context& ctx, VerificationReport& r) {
        fraction_check(ctx, r, scenario, smoke ? kSmokeSamples : kFractionSamples, target, label);
    };
}

CheckFn chi2_check(const char* which) {
    return [which = std::string(which)](Context& ctx, VerificationReport& r) {
        const ScenarioReport& rep = ctx.scenario("x-hs", kFractionSamples);
        const bool diag = which == "diagonal";
        const FitReport f = diag ? chi_squared(x_diag_curve(), rep.curve("diagonal"), 200)
                                 : chi_squared(x_antidiag_curve(), rep.curve("antidiagonal"), 200);
        r.measured = f.reduced();
        r.expected = "[0.5, 2]";
        r.passed = f.reduced() >= 0.5 && f.reduced() <= 2.0;
        r.detail = fmt("%s curve vs %s: chi2 %.2f over %d bins with >= 200 counts (%d skipped)", which.c_str(),
                       f.formula.c_str(), f.statistic, f.dof, f.skipped);
    };
}

std::optional<double> fitted_root(const ScenarioReport& rep) {
    if (rep.crossover.fit) return rep.crossover.fit->root;
    return std::nullopt;
}

CheckFn crossover_check(const std::string& scenario, double target) {
    return [=](Context& ctx, VerificationReport& r) {
        const ScenarioReport& rep = ctx.scenario(scenario, crossover_samples(scenario));
        r.expected = target;
        const auto root = fitted_root(rep);
        const std::string raw = rep.crossover.raw ? fmt("%.6f", *rep.crossover.raw) : rep.crossover.raw_error;
        if (!root) {
            r.measured = nullptr;
            r.passed = false;
            r.detail = fmt("%s: smoothed estimator found no crossing (%s); raw interpolation: %s", scenario.c_str(),
                           rep.crossover.fit_error.c_str(), raw.c_str());
            return;
        }
        r.measured = *root;
        r.passed = within(*root, target, 0.02);
        r.detail = fmt("%s, %llu states: smoothed estimate %.4f +- %.4f (reduced chi2 %.2f); raw interpolation %s",
                       scenario.c_str(), static_cast<unsigned long long>(rep.fraction.total), *root,
                       rep.crossover.fit->standard_error, rep.crossover.fit->reduced_chi2, raw.c_str());
    };
}

// The lower crossover bound of a scenario: the smoothed root, or 1/2 when
// the antidiagonal still dominates right up to 1/2 (region below resolution).
std::optional<double> crossover_bound(const ScenarioReport& rep) {
    if (rep.crossover.fit) return rep.crossover.fit->root;
    if (rep.crossover.fit_error.find("immediately") != std::string::npos) return 0.5;
    return std::nullopt;
}

void check_ordering(Context& ctx, VerificationReport& r) {
    std::map<std::string, std::optional<double>> b;
    for (const char* s : {"x-hs", "x-k5", "qubit-k3", "qubit-k4", "qubit-k5"})
        b[s] = crossover_bound(ctx.scenario(s, crossover_samples(s)));
    auto show = [](const std::optional<double>& v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); };
    r.measured = {{"x-k5", show(b["x-k5"])},         {"x-hs", show(b["x-hs"])},         {"qubit-k5", show(b["qubit-k5"])},
                  {"qubit-k4", show(b["qubit-k4"])}, {"qubit-k3", show(b["qubit-k3"])}};
    r.expected = "x-k5 < x-hs and qubit-k5 < qubit-k4 < qubit-k3";
    const bool all = b["x-hs"] && b["x-k5"] && b["qubit-k3"] && b["qubit-k4"] && b["qubit-k5"];
    r.passed = all && *b["x-k5"] < *b["x-hs"] && *b["qubit-k5"] < *b["qubit-k4"] && *b["qubit-k4"] < *b["qubit-k3"];
    auto val = [](const std::optional<double>& v) { return v ? fmt("%.4f", *v) : std::string("none"); };
    r.detail = fmt("smoothed crossovers x-k5 %s < x-hs %s; qubit-k5 %s < qubit-k4 %s < qubit-k3 %s "
                   "(1/2 when the antidiagonal dominates up to 1/2)",
                   val(b["x-k5"]).c_str(), val(b["x-hs"]).c_str(), val(b["qubit-k5"]).c_str(),
                   val(b["qubit-k4"]).c_str(), val(b["qubit-k3"]).c_str());
}

void check_bures(Context& ctx, VerificationReport& r) {
    const ScenarioReport& rep = ctx.scenario("bures", kBuresSamples);
    const Marginal m = marginal(rep.histogram, Axis::A);
    std::vector<double> x, p;
    for (int k = 0; k < rep.histogram.nbins(); ++k)
        if (m.ratio[k]) {
            x.push_back(rep.histogram.midpoint(k));
            p.push_back(*m.ratio[k]);
        }
    const double rho = spearman(x, p);
    const bool none = !rep.crossover.fit && rep.crossover.fit_error.find("immediately") != std::string::npos;
    r.measured = {{"crossover", rep.crossover.fit ? nlohmann::json(rep.crossover.fit->root) : nlohmann::json("none")},
                  {"spearman", rho}};
    r.expected = {{"crossover", "none below 1/2"}, {"spearman", "< -0.9"}};
    r.passed = none && rho < -0.9;
    r.detail = fmt("smoothed estimator: %s; Spearman of p(rA) vs rA over %zu bins = %.4f",
                   rep.crossover.fit ? fmt("crossing at %.4f", rep.crossover.fit->root).c_str()
                                     : rep.crossover.fit_error.c_str(),
                   x.size(), rho);
}

CheckFn exponent_check(const std::string& scenario, double target) {
    return [=](Context& ctx, VerificationReport& r) {
        const ScenarioReport& rep = ctx.scenario(scenario, kFractionSamples);
        const int jp = rep.definition.jacobian_power;
        const double a = marginal_exponent(rep.histogram, Axis::A, jp);
        const double b = marginal_exponent(rep.histogram, Axis::B, jp);
        r.measured = {{"A", a}, {"B", b}};
        r.expected = target;
        r.passed = within(a, target, 0.1) && within(b, target, 0.1);
        r.detail = fmt("%s: slopes %.4f (rA), %.4f (rB), volume element r^%d divided out", scenario.c_str(), a, b, jp);
    };
}

void check_qutrit_k24(Context& ctx, VerificationReport& r) {
    const ScenarioReport& rep = ctx.scenario("qutrit-k24", kQutritK24Samples);
    r.measured = rep.fraction.estimate;
    r.expected = 0.71179;
    r.passed = within(rep.fraction.estimate, 0.71179, 0.005);
    r.detail = fmt("PPT fraction %.5f from %llu states", rep.fraction.estimate,
                   static_cast<unsigned long long>(rep.fraction.total));
}

void check_qutrit_hs(Context& ctx, VerificationReport& r) {
    const ScenarioReport& rep = ctx.scenario("qutrit-hs", kQutritHsSamples);
    const double target = 1.0218e-4;
    r.measured = rep.fraction.estimate;
    r.expected = target;
    r.passed = std::abs(rep.fraction.estimate / target - 1.0) <= 0.3;
    r.detail = fmt("%llu PPT states of %llu (ratio to target %.3f)", static_cast<unsigned long long>(rep.fraction.separable),
                   static_cast<unsigned long long>(rep.fraction.total), rep.fraction.estimate / target);
}

double dominance(const CurveEstimate& diag, const CurveEstimate& anti, int& used) {
    int wins = 0;
    used = 0;
    for (std::size_t k = 0; k < diag.size(); ++k) {
        const double x = diag.abscissae[k];
        if (x >= 0.3 && x <= 0.5) continue;
        if (!diag.probabilities[k] || !anti.probabilities[k]) continue;
        ++used;
        if (*anti.probabilities[k] > *diag.probabilities[k]) ++wins;
    }
    return used ? static_cast<double>(wins) / used : 0.0;
}

void check_qubit_qutrit(Context& ctx, VerificationReport& r) {
    const ScenarioReport& rep = ctx.scenario("qubitqutrit-hs", kQubitQutritSamples);
    const CurveEstimate& diag = rep.curve("diagonal");
    int n_b = 0, n_a = 0;
    const double by_b = dominance(diag, rep.curve("antidiagonal_by_B"), n_b);
    const double by_a = dominance(diag, rep.curve("antidiagonal"), n_a);
    r.measured = {{"antidiagonal_by_B", by_b}, {"antidiagonal", by_a}};
    r.expected = ">= 0.8 for both antidiagonals";
    r.passed = by_b >= 0.8 && by_a >= 0.8 && n_b > 0 && n_a > 0;
    r.detail = fmt("fraction of defined bins outside [0.3, 0.5] with antidiagonal above diagonal: p(1-R_B, R_B) "
                   "%.3f over %d bins, p(r_A, 1-r_A) %.3f over %d bins; curves emitted: %zu",
                   by_b, n_b, by_a, n_a, rep.curves.size());
}

const std::vector<Check>& registry() {
    static const std::vector<Check> checks = {
        {"x-prob-points", 1, true, true, check_prob_points},
        {"x-crossover", 2, true, true, check_x_crossover},
        {"xk5-crossover", 2, true, true, check_xk5_crossover},
        {"k3-crossover", 2, true, true, check_k3_crossover},
        {"x-diag-max", 3, true, true, check_diag_max},
        {"x-gap", 3, true, true, check_gap},
        {"x-half-intersections", 4, true, true, check_half_intersections},
        {"x-integral", 5, true, true, check_integral},
        {"x-correlation", 5, true, true, check_correlation},
        {"x-marginal", 6, true, true, check_marginal},
        {"fit-consistency", 7, true, true, check_fit_consistency},
        {"smoke-fraction-x-hs", 8, true, false, fraction("x-hs", 0.4, "2/5", true)},
        {"smoke-fraction-qubit-k4", 8, true, false, fraction("qubit-k4", 8.0 / 33.0, "8/33", true)},
        {"fraction-x-hs", 8, false, true, fraction("x-hs", 0.4, "2/5")},
        {"fraction-qubit-k4", 8, false, true, fraction("qubit-k4", 8.0 / 33.0, "8/33")},
        {"fraction-qubit-k3", 8, false, true, fraction("qubit-k3", 1.0 / 14.0, "1/14")},
        {"fraction-qubit-k5", 8, false, true, fraction("qubit-k5", 61.0 / 143.0, "61/143")},
        {"fraction-rebit", 8, false, true, fraction("rebit", 29.0 / 64.0, "29/64")},
        {"chi2-x-hs-diagonal", 9, false, true, chi2_check("diagonal")},
        {"chi2-x-hs-antidiagonal", 9, false, true, chi2_check("antidiagonal")},
        {"crossover-x-hs", 10, false, true, crossover_check("x-hs", 0.402)},
        {"crossover-x-k5", 10, false, true, crossover_check("x-k5", 0.339)},
        {"crossover-qubit-k4", 10, false, true, crossover_check("qubit-k4", 0.454)},
        {"crossover-qubit-k5", 10, false, true, crossover_check("qubit-k5", 0.424)},
        {"crossover-rebit", 10, false, true, crossover_check("rebit", 0.472)},
        {"crossover-ordering", 10, false, true, check_ordering},
        {"bures", 11, false, true, check_bures},
        {"exponent-x-hs", 12, false, true, exponent_check("x-hs", 3.0)},
        {"exponent-x-k5", 12, false, true, exponent_check("x-k5", 5.0)},
        {"exponent-qubit-k3", 12, false, true, exponent_check("qubit-k3", 4.0)},
        {"exponent-qubit-k4", 12, false, true, exponent_check("qubit-k4", 6.0)},
        {"exponent-qubit-k5", 12, false, true, exponent_check("qubit-k5", 8.0)},
        {"exponent-rebit", 12, false, true, exponent_check("rebit", 3.5)},
        {"qutrit-k24", 13, false, true, check_qutrit_k24},
        {"qutrit-hs", 13, false, true, check_qutrit_hs},
        {"qubitqutrit", 13, false, true, check_qubit_qutrit},
    };
    return checks;
}

const Check& find_check(const std::string& name) {
    for (const auto& c : registry())
        if (c.name == name) return c;
    throw Error(ErrorKind::InvalidSpec, "unknown verification target '" + name + "'");
}

}  // namespace

std::vector<std::string> verification_targets(VerifyProfile profile) {
    std::vector<std::string> out;
    for (const auto& c : registry())
        if (profile == VerifyProfile::Fast ? c.fast : c.full) out.push_back(c.name);
    return out;
}

int criterion_of(const std::string& target) { return find_check(target).criterion; }

std::vector<VerificationReport> verify(const std::vector<std::string>& targets, const VerifyOptions& opts) {
    for (const auto& t : targets) find_check(t);
    Context ctx(opts);
    std::vector<VerificationReport> out;
    for (const auto& t : targets) {
        const Check& c = find_check(t);
        VerificationReport r;
        r.name = c.name;
        r.criterion = c.criterion;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            c.fn(ctx, r);
        } catch (const std::exception& e) {
            r.passed = false;
            r.detail = std::string("error: ") + e.what();
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (opts.on_result) opts.on_result(r);
        out.push_back(std::move(r));
    }
    return out;
}

nlohmann::json to_json(const VerificationReport& r) {
    return {{"name", r.name},         {"criterion", r.criterion}, {"passed", r.passed}, {"measured", r.measured},
            {"expected", r.expected}, {"detail", r.detail},       {"seconds", r.seconds}};
}

}  // namespace sepscan
