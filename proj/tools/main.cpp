// gbshrink: generalized Bayes shrinkage estimation for a multivariate normal
// mean with unknown scale. Subcommands: estimate, phi, risk, region, verify.

#include "gbshrink/blyth.hpp"
#include "gbshrink/estimator.hpp"
#include "gbshrink/risk.hpp"
#include "gbshrink/version.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using gbshrink::estimator::EstimatorSpec;
using gbshrink::estimator::Mode;
using gbshrink::numerics::QuadratureSpec;
using gbshrink::prior::HyperParams;
using gbshrink::prior::Problem;
using ordered_json = nlohmann::ordered_json;

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct Config {
    int p = 10;
    int n = 10;
    double a = 0.0;
    double b = 0.0;
    bool a_given = false;
    bool b_given = false;
    bool closed_form = false;
    double rel_tol = 1e-10;
    double abs_tol = 1e-14;
    std::uint64_t seed = 123456789ull;
    std::string format;  // "csv" or "json"; per-command default if empty
    std::string out;     // output path; stdout if empty

    // estimate
    std::string x_arg;
    std::string input_path;
    double s_value = 1.0;
    bool s_given = false;

    // phi
    double w_min = 1e-3;
    double w_max = 1e6;
    int points = 64;

    // risk
    std::string theta_grid_arg = "0,1,2,5,10,100";
    double eta = 1.0;
    std::uint64_t reps = 100000;
    bool identity = false;

    // region
    double a_min = -0.95;
    double a_max = 2.0;
    int a_steps = 12;
    double b_min = -0.45;
    double b_max = 2.0;
    int b_steps = 10;

    // verify
    std::string suite = "all";
    int samples = 10000;

    void resolve_defaults() {
        // Flagship defaults: a = xi(p,n) and b = n/2 - a - 2, so that a bare
        // run exercises the simple admissible minimax estimator.
        if (!a_given) a = gbshrink::estimator::xi(Problem{p, n});
        if (!b_given) b = 0.5 * n - a - 2.0;
    }

    Problem problem() const { return Problem{p, n}; }
    HyperParams hyper() const { return HyperParams{a, b}; }
    QuadratureSpec quadrature() const {
        QuadratureSpec q;
        q.relative_tolerance = rel_tol;
        q.absolute_tolerance = abs_tol;
        return q;
    }
    EstimatorSpec estimator_spec() const {
        EstimatorSpec spec;
        spec.problem = problem();
        spec.hyper = hyper();
        spec.mode = closed_form ? Mode::closed_form : Mode::general_quadrature;
        spec.quadrature = quadrature();
        return spec;
    }
    std::string mode_name() const { return closed_form ? "closed_form" : "general_quadrature"; }
};

std::vector<double> parse_double_list(const std::string& arg) {
    std::vector<double> out;
    std::stringstream ss(arg);
    std::string token;
    while (std::getline(ss, token, ',')) {
        if (token.empty()) continue;
        std::size_t pos = 0;
        const double v = std::stod(token, &pos);
        if (pos != token.size()) throw std::invalid_argument("cannot parse number '" + token + "'");
        out.push_back(v);
    }
    return out;
}

void emit(const Config& cfg, const std::string& payload) {
    if (cfg.out.empty() || cfg.out == "-") {
        std::cout << payload;
        return;
    }
    std::ofstream f(cfg.out, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open output file " + cfg.out);
    f << payload;
}

std::string csv_metadata(const Config& cfg, const std::string& command,
                         const std::vector<std::pair<std::string, std::string>>& extra) {
    std::ostringstream os;
    os << "# tool=gbshrink version=" << gbshrink::kVersion << "\n";
    os << "# command=" << command << "\n";
    os << "# p=" << cfg.p << " n=" << cfg.n << " a=" << fmt_double(cfg.a)
       << " b=" << fmt_double(cfg.b) << " mode=" << cfg.mode_name() << "\n";
    os << "# rel_tol=" << fmt_double(cfg.rel_tol) << " abs_tol=" << fmt_double(cfg.abs_tol)
       << " seed=" << cfg.seed << "\n";
    for (const auto& [k, v] : extra) os << "# " << k << "=" << v << "\n";
    return os.str();
}

ordered_json config_json(const Config& cfg, const std::string& command) {
    ordered_json j;
    j["tool"] = "gbshrink";
    j["version"] = gbshrink::kVersion;
    j["command"] = command;
    j["p"] = cfg.p;
    j["n"] = cfg.n;
    j["a"] = cfg.a;
    j["b"] = cfg.b;
    j["mode"] = cfg.mode_name();
    j["rel_tol"] = cfg.rel_tol;
    j["abs_tol"] = cfg.abs_tol;
    j["seed"] = cfg.seed;
    return j;
}

// ---------------------------------------------------------------------------
// estimate

int cmd_estimate(Config& cfg) {
    cfg.resolve_defaults();
    std::vector<double> x;
    double s = 0.0;
    if (!cfg.input_path.empty()) {
        std::ifstream f(cfg.input_path);
        if (!f) throw std::invalid_argument("cannot open input file " + cfg.input_path);
        std::vector<double> values;
        double v;
        while (f >> v) values.push_back(v);
        if (values.size() < 2)
            throw std::invalid_argument("input file must hold the x vector and s on the last line");
        s = values.back();
        values.pop_back();
        x = std::move(values);
    } else if (!cfg.x_arg.empty()) {
        x = parse_double_list(cfg.x_arg);
        if (!cfg.s_given) throw std::invalid_argument("--s is required with --x");
        s = cfg.s_value;
    } else {
        throw std::invalid_argument("estimate requires --x with --s, or --input FILE");
    }
    if (static_cast<int>(x.size()) != cfg.p)
        throw std::invalid_argument("x has length " + std::to_string(x.size()) +
                                    " but p = " + std::to_string(cfg.p));
    if (!(s > 0.0)) throw std::invalid_argument("s must be positive");

    const EstimatorSpec spec = cfg.estimator_spec();
    spec.validate();
    const gbshrink::estimator::Observation obs(x, s);
    const double shrink = gbshrink::estimator::shrink_fraction(obs.w, spec);
    const std::vector<double> est = gbshrink::estimator::estimate(obs, spec);
    const auto verdict = gbshrink::estimator::classify(cfg.problem(), cfg.hyper());

    const std::string format = cfg.format.empty() ? "json" : cfg.format;
    if (format == "json") {
        ordered_json j;
        j["config"] = config_json(cfg, "estimate");
        j["s"] = s;
        j["w"] = obs.w;
        j["shrink_fraction"] = shrink;
        j["estimate"] = est;
        ordered_json region;
        region["admissible"] = verdict.admissible;
        region["minimax"] = verdict.minimax;
        ordered_json reasons = ordered_json::array();
        for (const auto& r : verdict.reasons) {
            reasons.push_back({{"condition", r.id}, {"passed", r.passed}});
        }
        region["reasons"] = reasons;
        j["region"] = region;
        emit(cfg, j.dump(2) + "\n");
    } else {
        std::ostringstream os;
        os << csv_metadata(cfg, "estimate", {{"s", fmt_double(s)}});
        os << "w,shrink_fraction,admissible,minimax";
        for (std::size_t i = 0; i < est.size(); ++i) os << ",e" << (i + 1);
        os << "\n";
        os << fmt_double(obs.w) << "," << fmt_double(shrink) << "," << (verdict.admissible ? 1 : 0)
           << "," << (verdict.minimax ? 1 : 0);
        for (double e : est) os << "," << fmt_double(e);
        os << "\n";
        emit(cfg, os.str());
    }
    return 0;
}

// ---------------------------------------------------------------------------
// phi

int cmd_phi(Config& cfg) {
    cfg.resolve_defaults();
    if (!(cfg.w_min < cfg.w_max)) throw std::invalid_argument("phi requires w_min < w_max");
    if (cfg.points < 2) throw std::invalid_argument("phi requires points >= 2");
    if (!(cfg.w_min > 0.0)) throw std::invalid_argument("phi requires w_min > 0 for the log grid");
    const EstimatorSpec spec = cfg.estimator_spec();
    spec.validate();

    std::vector<std::array<double, 3>> rows;
    const double log_lo = std::log(cfg.w_min);
    const double log_hi = std::log(cfg.w_max);
    for (int k = 0; k < cfg.points; ++k) {
        const double w = std::exp(log_lo + (log_hi - log_lo) * k / (cfg.points - 1));
        const double sf = gbshrink::estimator::shrink_fraction(w, spec);
        rows.push_back({w, w * sf, sf});
    }

    const std::string format = cfg.format.empty() ? "csv" : cfg.format;
    if (format == "json") {
        ordered_json j;
        j["config"] = config_json(cfg, "phi");
        ordered_json data = ordered_json::array();
        for (const auto& r : rows)
            data.push_back({{"w", r[0]}, {"phi", r[1]}, {"shrink_fraction", r[2]}});
        j["rows"] = data;
        emit(cfg, j.dump(2) + "\n");
    } else {
        std::ostringstream os;
        os << csv_metadata(cfg, "phi",
                           {{"w_min", fmt_double(cfg.w_min)},
                            {"w_max", fmt_double(cfg.w_max)},
                            {"points", std::to_string(cfg.points)}});
        os << "w,phi,shrink_fraction\n";
        for (const auto& r : rows)
            os << fmt_double(r[0]) << "," << fmt_double(r[1]) << "," << fmt_double(r[2]) << "\n";
        emit(cfg, os.str());
    }
    return 0;
}

// ---------------------------------------------------------------------------
// risk

int cmd_risk(Config& cfg) {
    cfg.resolve_defaults();
    if (cfg.reps < 100) throw std::invalid_argument("risk requires reps >= 100");
    const std::vector<double> grid = parse_double_list(cfg.theta_grid_arg);
    if (grid.empty()) throw std::invalid_argument("risk requires a nonempty theta grid");
    if (!(cfg.eta > 0.0)) throw std::invalid_argument("risk requires eta > 0");

    std::vector<gbshrink::risk::RiskRow> rows;
    if (cfg.identity) {
        rows = gbshrink::risk::risk_curve_fn(gbshrink::risk::identity_estimator(), cfg.problem(),
                                             grid, cfg.eta, cfg.reps, cfg.seed);
    } else {
        const EstimatorSpec spec = cfg.estimator_spec();
        spec.validate();
        rows = gbshrink::risk::risk_curve(spec, grid, cfg.eta, cfg.reps, cfg.seed);
    }

    const std::string format = cfg.format.empty() ? "csv" : cfg.format;
    if (format == "json") {
        ordered_json j;
        j["config"] = config_json(cfg, "risk");
        j["config"]["reps"] = cfg.reps;
        j["config"]["eta"] = cfg.eta;
        j["config"]["identity"] = cfg.identity;
        ordered_json data = ordered_json::array();
        for (const auto& r : rows)
            data.push_back({{"theta_norm", r.theta_norm},
                            {"risk_mean", r.estimate.mean},
                            {"std_error", r.estimate.std_error}});
        j["rows"] = data;
        emit(cfg, j.dump(2) + "\n");
    } else {
        std::ostringstream os;
        os << csv_metadata(cfg, "risk",
                           {{"reps", std::to_string(cfg.reps)},
                            {"eta", fmt_double(cfg.eta)},
                            {"estimator", cfg.identity ? "identity" : "generalized_bayes"}});
        os << "theta_norm,risk_mean,std_error\n";
        for (const auto& r : rows)
            os << fmt_double(r.theta_norm) << "," << fmt_double(r.estimate.mean) << ","
               << fmt_double(r.estimate.std_error) << "\n";
        emit(cfg, os.str());
    }
    return 0;
}

// ---------------------------------------------------------------------------
// region

int cmd_region(Config& cfg) {
    cfg.resolve_defaults();
    if (cfg.a_steps < 1 || cfg.b_steps < 1)
        throw std::invalid_argument("region requires a_steps >= 1 and b_steps >= 1");
    if (!(cfg.a_min > -1.0)) throw std::invalid_argument("region requires a_min > -1");
    if (!(cfg.a_min <= cfg.a_max) || !(cfg.b_min <= cfg.b_max))
        throw std::invalid_argument("region requires a_min <= a_max and b_min <= b_max");

    const double xi_pn = gbshrink::estimator::xi(cfg.problem());
    struct Row {
        double a, b;
        bool admissible, minimax;
    };
    std::vector<Row> rows;
    for (int ia = 0; ia < cfg.a_steps; ++ia) {
        const double a = cfg.a_steps == 1
                             ? cfg.a_min
                             : cfg.a_min + (cfg.a_max - cfg.a_min) * ia / (cfg.a_steps - 1);
        for (int ib = 0; ib < cfg.b_steps; ++ib) {
            const double b = cfg.b_steps == 1
                                 ? cfg.b_min
                                 : cfg.b_min + (cfg.b_max - cfg.b_min) * ib / (cfg.b_steps - 1);
            const auto verdict = gbshrink::estimator::classify(cfg.problem(), HyperParams{a, b});
            rows.push_back({a, b, verdict.admissible, verdict.minimax});
        }
    }

    const std::string format = cfg.format.empty() ? "csv" : cfg.format;
    if (format == "json") {
        ordered_json j;
        j["config"] = config_json(cfg, "region");
        j["xi"] = xi_pn;
        ordered_json data = ordered_json::array();
        for (const auto& r : rows)
            data.push_back({{"a", r.a},
                            {"b", r.b},
                            {"admissible", r.admissible},
                            {"minimax", r.minimax},
                            {"both", r.admissible && r.minimax}});
        j["rows"] = data;
        emit(cfg, j.dump(2) + "\n");
    } else {
        std::ostringstream os;
        os << csv_metadata(cfg, "region", {{"xi", fmt_double(xi_pn)}});
        os << "a,b,admissible,minimax,both\n";
        for (const auto& r : rows)
            os << fmt_double(r.a) << "," << fmt_double(r.b) << "," << (r.admissible ? 1 : 0) << ","
               << (r.minimax ? 1 : 0) << "," << ((r.admissible && r.minimax) ? 1 : 0) << "\n";
        emit(cfg, os.str());
    }
    return 0;
}

// ---------------------------------------------------------------------------
// verify

struct CheckResult {
    std::string name;
    bool passed = false;
    double statistic = 0.0;
    std::string note;
};

std::vector<CheckResult> verify_prior(const Config& cfg) {
    namespace prior = gbshrink::prior;
    namespace blyth = gbshrink::blyth;
    const QuadratureSpec q = cfg.quadrature();
    std::vector<CheckResult> checks;

    {
        const auto rep =
            blyth::h_integral_check({1, 2, 5, 20}, cfg.problem(), cfg.hyper(), q);
        checks.push_back({"prior/h_integral_2i", rep.passed, rep.sup_statistic,
                          "max relative error vs 2i (and unit theta mass)"});
    }
    {
        // psi endpoints against the pure Beta closed forms at (p,n,a,b)=(4,4,0,0)
        const Problem pr{4, 4};
        const HyperParams hy{0.0, 0.0};
        const double psi0 = prior::psi_general(0.0, 0.0, 1.0, pr, hy, q);
        const double psi1 = prior::psi_general(1.0, 0.0, 1.0, pr, hy, q);
        const double err = std::max(std::abs(psi0 / 256.0 - 1.0), std::abs(psi1 / 64.0 - 1.0));
        checks.push_back({"prior/psi_endpoints", err <= 1e-10, err, "vs Gamma(5) 2^5 B(3,1), B(3,2)"});
    }
    {
        // psi monotone in z and between its endpoint values
        const Problem pr = cfg.problem();
        const HyperParams hy = cfg.hyper();
        double worst = 0.0;
        bool mono_ok = true;
        for (auto jk : {std::pair{0.0, 1.0}, std::pair{-0.5, 2.0}, std::pair{0.5, 2.0}}) {
            const double lo = prior::psi_general(0.0, jk.first, jk.second, pr, hy, q);
            const double hi = prior::psi_general(1.0, jk.first, jk.second, pr, hy, q);
            double prev = lo;
            for (int k = 1; k <= 20; ++k) {
                const double z = k / 21.0;
                const double v = prior::psi_general(z, jk.first, jk.second, pr, hy, q);
                const double lo_b = std::min(lo, hi) * (1.0 - 1e-9);
                const double hi_b = std::max(lo, hi) * (1.0 + 1e-9);
                if (v < lo_b || v > hi_b) worst = std::max(worst, 1.0);
                const bool increasing = hi >= lo;
                if ((increasing && v < prev * (1.0 - 1e-9)) ||
                    (!increasing && v > prev * (1.0 + 1e-9)))
                    mono_ok = false;
                prev = v;
            }
        }
        checks.push_back({"prior/psi_monotone_between", worst == 0.0 && mono_ok, worst,
                          "20 interior z, (j,k) in {(0,1),(-1/2,2),(1/2,2)}"});
    }
    {
        // f(v|z) normalization
        prior::MixtureDensityParams params;
        params.problem = cfg.problem();
        params.hyper = cfg.hyper();
        double worst = 0.0;
        for (double z : {0.0, 0.5, 0.99}) {
            params.z = z;
            const double mass = prior::f_log_moment(params, 0, prior::MomentRegion::full, 1.0, q);
            worst = std::max(worst, std::abs(mass - 1.0));
        }
        checks.push_back({"prior/f_normalization", worst <= 1e-6, worst, "z in {0, 0.5, 0.99}"});
    }
    {
        // f(v|0) reduces to the Gamma((p+n)/2+1, scale 2) density
        prior::MixtureDensityParams params;
        params.problem = cfg.problem();
        params.hyper = cfg.hyper();
        params.z = 0.0;
        const double shape = 0.5 * (params.problem.p + params.problem.n) + 1.0;
        double worst = 0.0;
        for (double v : {1.0, 5.0, 20.0}) {
            const double fv = prior::f_density(v, params, q);
            const double ref = std::exp((shape - 1.0) * std::log(v) - 0.5 * v -
                                        gbshrink::numerics::log_gamma(shape) - shape * std::log(2.0));
            worst = std::max(worst, std::abs(fv / ref - 1.0));
        }
        checks.push_back({"prior/f_gamma_reduction_z0", worst <= 1e-10, worst, "pointwise at v in {1,5,20}"});
    }
    {
        // pi(r): derivative consistency at the route switch point
        const Problem pr = cfg.problem();
        const HyperParams hy = cfg.hyper();
        const double h = 1e-6;
        const double grad = prior::prior_density_deriv(1.0, pr, hy, q);
        const double fd =
            (prior::prior_density_r(1.0 + h, pr, hy, q) - prior::prior_density_r(1.0 - h, pr, hy, q)) /
            (2.0 * h);
        const double err = std::abs(fd / grad - 1.0);
        checks.push_back({"prior/pi_route_consistency", err <= 1e-5, err,
                          "central difference spans both evaluation routes"});
    }
    {
        // pi(0) closed form and continuity at r -> 0 for b > p/2 - 1
        const Problem pr{4, 4};
        const HyperParams hy{0.0, 3.0};
        const double at0 = prior::prior_density_r(0.0, pr, hy, q);
        const double near0 = prior::prior_density_r(1e-8, pr, hy, q);
        const double err = std::abs(near0 / at0 - 1.0);
        checks.push_back({"prior/pi_zero_closed_form", err <= 1e-6, err, "(p,a,b)=(4,0,3)"});
    }
    {
        // tail asymptotics of pi(r)
        const Problem pr{10, 10};
        const HyperParams hy{-0.5, 0.0};
        const double r = 1e8;
        const double lhs = prior::prior_density_r(r, pr, hy, q);
        const double log_ref = -0.5 * pr.p * std::log(2.0 * std::acos(-1.0)) -
                               gbshrink::numerics::log_beta(hy.a + 1.0, hy.b + 1.0) +
                               gbshrink::numerics::log_gamma(0.5 * pr.p + hy.a + 1.0) +
                               (0.5 * pr.p + hy.a + 1.0) * std::log(2.0 / r);
        const double err = std::abs(lhs / std::exp(log_ref) - 1.0);
        checks.push_back({"prior/pi_tail_asymptotics", err <= 0.02, err, "r = 1e8"});
    }
    {
        // slope limits in the three regimes
        const QuadratureSpec qs = q;
        const double s1 = prior::log_slope(1e8, Problem{10, 10}, HyperParams{-0.5, 0.0}, qs);
        const double s2 = prior::log_slope(1e-8, Problem{4, 4}, HyperParams{0.0, 0.0}, qs);
        const double s3 = prior::log_slope(1e-8, Problem{4, 4}, HyperParams{0.0, 5.0}, qs);
        const double e1 = std::abs(s1 / -5.5 - 1.0);
        const double e2 = std::abs(s2 / -1.0 - 1.0);
        const double e3 = std::abs(s3);
        const bool ok = e1 <= 0.02 && e2 <= 0.02 && e3 <= 0.02;
        checks.push_back({"prior/log_slope_limits", ok, std::max({e1, e2, e3}),
                          "-(p/2+a+1) at r=1e8; -(p/2-1-b) and 0 at r=1e-8"});
    }
    {
        const bool ok = prior::h_blyth(1.0, 1) == 1.0 &&
                        std::abs(prior::h_blyth(std::exp(2.0), 2) - 0.5) < 1e-15 &&
                        prior::h_blyth(0.37, 3) == prior::h_blyth(1.0 / 0.37, 3) &&
                        prior::h_blyth(0.37, 4) > prior::h_blyth(0.37, 3);
        checks.push_back({"prior/h_blyth_pointwise", ok, 0.0, "value, symmetry, monotone in i"});
    }
    return checks;
}

std::vector<CheckResult> verify_estimator(const Config& cfg) {
    namespace est = gbshrink::estimator;
    const QuadratureSpec q = cfg.quadrature();
    std::vector<CheckResult> checks;

    {
        // general-quadrature shrink vs the closed form on the b = n/2-a-2 line
        EstimatorSpec spec;
        spec.problem = Problem{10, 10};
        spec.hyper.a = est::xi(spec.problem);
        spec.hyper.b = 0.5 * spec.problem.n - spec.hyper.a - 2.0;
        spec.quadrature = q;
        spec.mode = Mode::general_quadrature;
        const double c = (0.5 * spec.problem.p + spec.hyper.a + 1.0) /
                         (0.5 * spec.problem.n - 1.0 - spec.hyper.a);
        double worst = 0.0;
        for (int k = 0; k < 64; ++k) {
            const double w = std::exp(std::log(1e-3) + (std::log(1e6) - std::log(1e-3)) * k / 63.0);
            worst = std::max(worst, std::abs(est::shrink_fraction(w, spec) - c / (w + 1.0 + c)));
        }
        checks.push_back({"estimator/closed_form_agreement", worst <= 1e-8, worst,
                          "64 log-spaced w in [1e-3, 1e6]"});
    }
    {
        EstimatorSpec spec;
        spec.problem = Problem{10, 10};
        spec.hyper = HyperParams{-0.5, 0.0};
        spec.quadrature = q;
        const double limit = (0.5 * spec.problem.p + spec.hyper.a + 1.0) /
                             (0.5 * spec.problem.n - spec.hyper.a - 1.0);
        const double err = std::abs(est::phi(1e6, spec) / limit - 1.0);
        checks.push_back({"estimator/phi_limit", err <= 0.01, err, "phi(1e6) vs 11/9"});
    }
    {
        EstimatorSpec spec = cfg.estimator_spec();
        std::vector<double> phis;
        for (int k = 0; k < 64; ++k) {
            const double w = std::exp(std::log(1e-3) + (std::log(1e6) - std::log(1e-3)) * k / 63.0);
            phis.push_back(est::phi(w, spec));
        }
        const auto res = est::baranchik_check(phis, cfg.problem());
        checks.push_back({"estimator/baranchik_default_spec", res.passed, 0.0,
                          res.passed ? "monotone and inside [0, 2(p-2)/(n+2)]" : res.failure});
    }
    {
        const double x1 = est::xi(Problem{10, 10});
        const double x2 = est::xi(Problem{6, 4});
        const bool ok = std::abs(x1 + 2.0 / 7.0) < 1e-14 && std::abs(x2 + 8.0 / 7.0) < 1e-14;
        checks.push_back({"estimator/xi_values", ok, std::abs(x1 + 2.0 / 7.0),
                          "xi(10,10) = -2/7, xi(6,4) = -8/7"});
    }
    {
        const auto v1 = est::classify(Problem{10, 10}, HyperParams{-0.5, 0.0});
        const auto v2 = est::classify(Problem{10, 10}, HyperParams{3.0, 0.0});
        const auto v3 = est::classify(Problem{6, 4}, HyperParams{-0.5, 0.0});
        const bool ok = v1.admissible && v1.minimax && v2.admissible && !v2.minimax &&
                        v3.admissible && !v3.minimax;
        checks.push_back({"estimator/classify_examples", ok, 0.0,
                          "(10,10,-0.5,0) both; (10,10,3,0) adm only; (6,4,-0.5,0) adm only"});
    }
    {
        EstimatorSpec spec = cfg.estimator_spec();
        spec.mode = Mode::general_quadrature;
        const double target = (0.5 * cfg.p + cfg.a + 1.0) / (0.5 * cfg.p + cfg.a + cfg.b + 2.0);
        const double err = std::abs(est::shrink_fraction(0.0, spec) - target);
        checks.push_back({"estimator/w0_beta_moment", err <= 1e-10, err,
                          "shrink(0) = (p/2+a+1)/(p/2+a+b+2)"});
    }
    return checks;
}

std::vector<CheckResult> verify_blyth(const Config& cfg) {
    namespace blyth = gbshrink::blyth;
    const QuadratureSpec q = cfg.quadrature();
    std::vector<CheckResult> checks;

    {
        std::vector<double> s_grid;
        for (int k = 0; k < 9; ++k) s_grid.push_back(std::pow(10.0, -4.0 + k));
        const auto rep = blyth::b_i_bound_profile({1, 10}, s_grid, {0.0, 0.7, 0.99}, cfg.problem(),
                                                  cfg.hyper(), q);
        bool range_ok = true;
        for (const auto& pt : rep.details) range_ok = range_ok && pt.ok;
        checks.push_back({"blyth/b_i_profile", rep.passed && range_ok, rep.sup_statistic,
                          "sup of b_i (1+|log s|)^2 on a 9x3x2 grid"});
    }
    {
        const double q1 = blyth::q2_constant(Problem{4, 4}, HyperParams{0.0, 0.0}, q);
        const double q2 = blyth::q2_constant(Problem{5, 5}, HyperParams{-0.5, 0.0}, q);
        const double q3 = blyth::q2_constant(cfg.problem(), cfg.hyper(), q);
        const bool ok = q1 > 1.0 && q2 > 1.0 && q3 > 1.0;
        checks.push_back({"blyth/q2_gt_1", ok, std::min({q1, q2, q3}) - 1.0,
                          "three (p,a,b) configurations"});
    }
    {
        const auto rep = blyth::a_bound_check({0.0, 1.0}, {0.1, 10.0}, Problem{5, 5},
                                              HyperParams{-0.5, 0.0}, 0, cfg.seed, q);
        checks.push_back({"blyth/a_bound_small_grid", rep.passed, rep.sup_statistic,
                          "normalized A(x,s) statistic, refinement-stable"});
    }
    return checks;
}

std::vector<CheckResult> verify_inequalities(const Config& cfg) {
    const auto rep = gbshrink::blyth::inequality_suite(cfg.samples, cfg.seed);
    return {{"inequalities/pointwise_lemmas", rep.passed, rep.sup_statistic,
             rep.passed ? "zero violations" : rep.grid}};
}

int cmd_verify(Config& cfg) {
    cfg.resolve_defaults();
    std::vector<CheckResult> checks;
    const std::string& suite = cfg.suite;
    if (suite != "all" && suite != "prior" && suite != "estimator" && suite != "blyth" &&
        suite != "inequalities")
        throw std::invalid_argument("suite must be one of all, prior, estimator, blyth, inequalities");

    if (suite == "all" || suite == "prior") {
        const auto c = verify_prior(cfg);
        checks.insert(checks.end(), c.begin(), c.end());
    }
    if (suite == "all" || suite == "estimator") {
        const auto c = verify_estimator(cfg);
        checks.insert(checks.end(), c.begin(), c.end());
    }
    if (suite == "all" || suite == "blyth") {
        const auto c = verify_blyth(cfg);
        checks.insert(checks.end(), c.begin(), c.end());
    }
    if (suite == "all" || suite == "inequalities") {
        const auto c = verify_inequalities(cfg);
        checks.insert(checks.end(), c.begin(), c.end());
    }

    bool all_passed = true;
    std::ostringstream text;
    for (const auto& c : checks) {
        all_passed = all_passed && c.passed;
        text << (c.passed ? "[PASS] " : "[FAIL] ") << c.name << " (stat=" << fmt_double(c.statistic)
             << ") " << c.note << "\n";
    }
    text << (all_passed ? "all checks passed" : "some checks FAILED") << " (" << checks.size()
         << " checks)\n";

    ordered_json j;
    j["config"] = config_json(cfg, "verify");
    j["suite"] = suite;
    ordered_json arr = ordered_json::array();
    for (const auto& c : checks)
        arr.push_back({{"name", c.name},
                       {"passed", c.passed},
                       {"statistic", c.statistic},
                       {"note", c.note}});
    j["checks"] = arr;
    j["all_passed"] = all_passed;

    const std::string format = cfg.format.empty() ? "text" : cfg.format;
    if (format == "json") {
        emit(cfg, j.dump(2) + "\n");
    } else {
        std::cout << text.str();
        if (!cfg.out.empty() && cfg.out != "-") {
            std::ofstream f(cfg.out, std::ios::binary | std::ios::trunc);
            if (!f) throw std::runtime_error("cannot open output file " + cfg.out);
            f << j.dump(2) << "\n";
        }
    }
    return all_passed ? 0 : 1;
}

void add_common_options(CLI::App* sub, Config& cfg) {
    sub->add_option("--p", cfg.p, "dimension of the mean vector")->check(CLI::PositiveNumber);
    sub->add_option("--n", cfg.n, "degrees of freedom of S")->check(CLI::PositiveNumber);
    sub->add_option("--a", cfg.a, "prior exponent a (default: xi(p,n))")
        ->each([&cfg](const std::string&) { cfg.a_given = true; });
    sub->add_option("--b", cfg.b, "prior exponent b (default: n/2 - a - 2)")
        ->each([&cfg](const std::string&) { cfg.b_given = true; });
    sub->add_flag("--closed-form", cfg.closed_form, "use the closed form (requires b = n/2-a-2)");
    sub->add_option("--rel-tol", cfg.rel_tol, "quadrature relative tolerance");
    sub->add_option("--abs-tol", cfg.abs_tol, "quadrature absolute tolerance");
    sub->add_option("--seed", cfg.seed, "master RNG seed (recorded in all outputs)");
    sub->add_option("--format", cfg.format, "output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", cfg.out, "output path (stdout if omitted)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"generalized Bayes shrinkage estimators under unknown scale"};
    app.require_subcommand(1);
    Config cfg;
    int rc = 0;

    auto* cmd_est = app.add_subcommand("estimate", "shrinkage estimate for one observation");
    add_common_options(cmd_est, cfg);
    cmd_est->add_option("--x", cfg.x_arg, "observation vector, comma separated");
    cmd_est->add_option("--s", cfg.s_value, "scale statistic s > 0")
        ->each([&cfg](const std::string&) { cfg.s_given = true; });
    cmd_est->add_option("--input", cfg.input_path, "file with x entries, one per line; s last");
    cmd_est->callback([&] { rc = cmd_estimate(cfg); });

    auto* cmd_phi_p = app.add_subcommand("phi", "tabulate the shrinkage function on a log grid");
    add_common_options(cmd_phi_p, cfg);
    cmd_phi_p->add_option("--w-min", cfg.w_min, "left end of the w grid");
    cmd_phi_p->add_option("--w-max", cfg.w_max, "right end of the w grid");
    cmd_phi_p->add_option("--points", cfg.points, "number of grid points");
    cmd_phi_p->callback([&] { rc = cmd_phi(cfg); });

    auto* cmd_risk_p = app.add_subcommand("risk", "Monte Carlo risk along |theta|");
    add_common_options(cmd_risk_p, cfg);
    cmd_risk_p->add_option("--theta-grid", cfg.theta_grid_arg, "comma separated |theta| values");
    cmd_risk_p->add_option("--eta", cfg.eta, "precision eta = 1/sigma^2");
    cmd_risk_p->add_option("--reps", cfg.reps, "Monte Carlo replications per grid point");
    cmd_risk_p->add_flag("--identity", cfg.identity, "evaluate delta = X instead");
    cmd_risk_p->callback([&] { rc = cmd_risk(cfg); });

    auto* cmd_region_p = app.add_subcommand("region", "admissibility/minimaxity map over (a,b)");
    add_common_options(cmd_region_p, cfg);
    cmd_region_p->add_option("--a-min", cfg.a_min, "grid start for a (must be > -1)");
    cmd_region_p->add_option("--a-max", cfg.a_max, "grid end for a");
    cmd_region_p->add_option("--a-steps", cfg.a_steps, "grid points for a");
    cmd_region_p->add_option("--b-min", cfg.b_min, "grid start for b");
    cmd_region_p->add_option("--b-max", cfg.b_max, "grid end for b");
    cmd_region_p->add_option("--b-steps", cfg.b_steps, "grid points for b");
    cmd_region_p->callback([&] { rc = cmd_region(cfg); });

    auto* cmd_verify_p = app.add_subcommand("verify", "run the numerical verification suites");
    add_common_options(cmd_verify_p, cfg);
    cmd_verify_p->add_option("--suite", cfg.suite,
                             "all, prior, estimator, blyth or inequalities");
    cmd_verify_p->add_option("--samples", cfg.samples, "random samples per inequality lemma");
    cmd_verify_p->callback([&] { rc = cmd_verify(cfg); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return rc;
}
