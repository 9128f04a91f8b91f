#include "gbshrink/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace gbshrink::estimator {

using numerics::LogIntegrationResult;
using numerics::QuadratureError;

namespace {

void require_converged(const LogIntegrationResult& r, const char* what) {
    if (!r.converged) throw QuadratureError(std::string(what) + ": integration did not converge");
}

/// Posterior mean of lambda through the lambda-form integrals: the posterior
/// density is proportional to lambda^(p/2+a) (1-lambda)^b (1+lambda w)^-M
/// with M = (p+n)/2 + 1. Well conditioned for small w.
double shrink_lambda_form(double w, const EstimatorSpec& spec) {
    const double p = spec.problem.p;
    const double n = spec.problem.n;
    const double expo = 0.5 * (p + n) + 1.0;
    auto logf = [&](double lam) { return -expo * std::log1p(lam * w); };
    LogIntegrationResult num =
        numerics::integrate_unit_log(logf, 0.5 * p + spec.hyper.a + 1.0, spec.hyper.b, spec.quadrature);
    LogIntegrationResult den =
        numerics::integrate_unit_log(logf, 0.5 * p + spec.hyper.a, spec.hyper.b, spec.quadrature);
    require_converged(num, "shrink_fraction");
    require_converged(den, "shrink_fraction");
    return std::exp(num.log_value - den.log_value);
}

/// Same quantity after the substitution t = (1+w)lambda/(1+lambda w), which
/// keeps the integrand bounded as w grows. Here z = w/(1+w) and
/// shrink = (1-z) * int t^(p/2+a+1)(1-t)^b (1-zt)^(n/2-a-b-2) dt
///                / int t^(p/2+a)  (1-t)^b (1-zt)^(n/2-a-b-1) dt.
double shrink_t_form(double w, const EstimatorSpec& spec) {
    const double p = spec.problem.p;
    const double n = spec.problem.n;
    const double a = spec.hyper.a;
    const double b = spec.hyper.b;
    const double z = w / (1.0 + w);
    const double one_minus_z = 1.0 / (1.0 + w);
    auto logf_num = [&](double t) { return (0.5 * n - a - b - 2.0) * std::log1p(-z * t); };
    auto logf_den = [&](double t) { return (0.5 * n - a - b - 1.0) * std::log1p(-z * t); };
    LogIntegrationResult num =
        numerics::integrate_unit_log(logf_num, 0.5 * p + a + 1.0, b, spec.quadrature);
    LogIntegrationResult den =
        numerics::integrate_unit_log(logf_den, 0.5 * p + a, b, spec.quadrature);
    require_converged(num, "shrink_fraction");
    require_converged(den, "shrink_fraction");
    return one_minus_z * std::exp(num.log_value - den.log_value);
}

}  // namespace

Observation::Observation(std::vector<double> x_in, double s_in) : x(std::move(x_in)), s(s_in) {
    if (!(s > 0.0)) throw std::domain_error("Observation requires s > 0");
    double norm_sq = 0.0;
    for (double xi : x) norm_sq += xi * xi;
    w = norm_sq / s;
    z = w / (1.0 + w);
}

void EstimatorSpec::validate() const {
    problem.validate();
    hyper.validate();
    quadrature.validate();
    if (mode == Mode::closed_form) {
        const double target = 0.5 * problem.n - hyper.a - 2.0;
        if (std::abs(hyper.b - target) > 1e-12)
            throw std::domain_error("closed_form mode requires b = n/2 - a - 2");
    }
}

double shrink_fraction(double w, const EstimatorSpec& spec) {
    spec.validate();
    if (!(w >= 0.0)) throw std::domain_error("shrink_fraction requires w >= 0");
    if (spec.mode == Mode::closed_form) {
        const double c =
            (0.5 * spec.problem.p + spec.hyper.a + 1.0) / (0.5 * spec.problem.n - 1.0 - spec.hyper.a);
        return c / (w + 1.0 + c);
    }
    // z = 0.5 corresponds to w = 1; each form is dominant-singularity-free
    // on its side of the switch.
    return w < 1.0 ? shrink_lambda_form(w, spec) : shrink_t_form(w, spec);
}

double phi(double w, const EstimatorSpec& spec) {
    return w * shrink_fraction(w, spec);
}

std::vector<double> estimate(const Observation& obs, const EstimatorSpec& spec) {
    spec.validate();
    if (static_cast<int>(obs.x.size()) != spec.problem.p)
        throw std::invalid_argument("estimate: observation dimension does not match problem.p");
    const double factor = 1.0 - shrink_fraction(obs.w, spec);
    std::vector<double> out(obs.x.size());
    for (std::size_t i = 0; i < obs.x.size(); ++i) out[i] = factor * obs.x[i];
    return out;
}

double xi(const Problem& problem) {
    problem.validate();
    const double p = problem.p;
    const double n = problem.n;
    return -2.0 + (p - 2.0) * (n + 2.0) / (2.0 * (2.0 * p + n - 2.0));
}

BaranchikResult baranchik_check(const std::vector<double>& phi_values, const Problem& problem) {
    problem.validate();
    if (problem.p <= 2)
        throw std::domain_error("baranchik_check requires p >= 3 (bound is vacuous otherwise)");
    if (phi_values.size() < 2)
        throw std::invalid_argument("baranchik_check requires at least 2 samples");

    BaranchikResult res;
    const double bound = 2.0 * (problem.p - 2.0) / (problem.n + 2.0);
    for (std::size_t k = 0; k < phi_values.size(); ++k) {
        const double v = phi_values[k];
        if (!(v >= 0.0) || v > bound) {
            res.passed = false;
            res.failure = "value outside [0, 2(p-2)/(n+2)]";
            res.violation_index = static_cast<int>(k);
            return res;
        }
        if (k > 0 && v < phi_values[k - 1] - 1e-12) {
            res.passed = false;
            res.failure = "sequence not nondecreasing";
            res.violation_index = static_cast<int>(k);
            return res;
        }
    }
    res.passed = true;
    return res;
}

RegionVerdict classify(const Problem& problem, const HyperParams& hyper) {
    problem.validate();
    const double a = hyper.a;
    const double b = hyper.b;
    const double p = problem.p;
    const double n = problem.n;
    const double xi_pn = xi(problem);

    RegionVerdict v;
    const bool a_low = a > -1.0;
    const bool a_high = a < 0.5 * n;
    const bool b_adm = b > -0.5;
    const bool p_ok = problem.p >= 3;  // Baranchik bound nonpositive for p <= 2
    const bool b_mini = b >= 0.0;
    const bool a_mini_low = a > -0.5 * p - 1.0;
    const bool a_mini_high = a <= xi_pn;

    v.reasons = {
        {"a > -1", a_low},
        {"a < n/2", a_high},
        {"b > -1/2", b_adm},
        {"p >= 3 (Baranchik bound nonvacuous)", p_ok},
        {"b >= 0", b_mini},
        {"a > -p/2 - 1", a_mini_low},
        {"a <= xi(p,n)", a_mini_high},
    };
    v.admissible = a_low && a_high && b_adm;
    v.minimax = p_ok && b_mini && a_mini_low && a_mini_high;
    return v;
}

}  // namespace gbshrink::estimator
