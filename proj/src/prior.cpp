#include "gbshrink/prior.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace gbshrink::prior {

using numerics::IntegrationResult;
using numerics::LogIntegrationResult;
using numerics::QuadratureError;

namespace {

constexpr double kLog2Pi = 1.8378770664093454836;  // log(2*pi)

void require_converged(const IntegrationResult& r, const char* what) {
    if (!r.converged) throw QuadratureError(std::string(what) + ": integration did not converge");
}

void require_converged(const LogIntegrationResult& r, const char* what) {
    if (!r.converged) throw QuadratureError(std::string(what) + ": integration did not converge");
}

/// pi(r|a,b) * (2pi)^{p/2} B(a+1,b+1) for 0 < r <= 1, integrating the
/// lambda form. The half near lambda = 1 is pushed through
/// v = r(1-lambda)/(2 ... ) so the exponential boundary layer of width r
/// becomes an O(1)-scale integrand.
double pi_small_r(double r, double p, double a, double b, const QuadratureSpec& spec) {
    const double pa = 0.5 * p + a;

    // lambda in (0, 1/2]: weight lambda^(p/2+a), remaining factors smooth.
    auto f_left = [&](double u) {
        // lambda = u/2
        return std::exp((b - 0.5 * p) * std::log1p(-0.5 * u) - r * u / (2.0 * (2.0 - u)));
    };
    IntegrationResult left = numerics::integrate_unit(f_left, pa, 0.0, spec);
    require_converged(left, "prior_density_r(small r, left)");
    const double left_value = left.value * std::pow(0.5, pa + 1.0);

    // lambda in [1/2, 1): with mu = 1 - lambda and v = r(1-mu)/(2 mu),
    // shifted to w = v - r/2, the integrand is exp(-w) times smooth factors.
    auto f_right = [&](double w) {
        const double den = 2.0 * w + 2.0 * r;
        const double log_g = pa * std::log((2.0 * w + r) / den) +
                             (b - 0.5 * p) * std::log(r / den) + std::log(2.0 * r) -
                             2.0 * std::log(den) - w;
        return std::exp(log_g);
    };
    // geometric ladder of initial splits across the w ~ r layer, so no panel
    // straddles the layer edge with all its nodes outside
    std::vector<double> layer_splits;
    for (double w = r; w < 1.0; w *= 4.0) layer_splits.push_back(w);
    layer_splits.push_back(1.0);
    IntegrationResult right = numerics::integrate_positive_axis(f_right, spec, 1.0, layer_splits);
    require_converged(right, "prior_density_r(small r, right)");
    const double right_value = std::exp(-0.5 * r) * right.value;

    return left_value + right_value;
}

/// pi(r|a,b) * (2pi)^{p/2} B(a+1,b+1) for r > 1, through t = r/(2 xi) with
/// xi = lambda/(1-lambda); the integrand is then a Gamma-type profile with
/// no r-dependent boundary layer.
double pi_large_r(double r, double p, double a, double b, const QuadratureSpec& spec) {
    auto f = [&](double t) {
        const double xi = r / (2.0 * t);
        const double log_h = (b - 0.5 * p + 1.0) * std::log(xi) -
                             (a + b + 2.0) * std::log1p(xi) - t - std::log(t);
        return std::exp(log_h);
    };
    const double scale = 1.0 + std::max(0.0, 0.5 * p + a);
    IntegrationResult res = numerics::integrate_positive_axis(f, spec, scale, {0.5 * r, 1.0});
    require_converged(res, "prior_density_r(large r)");
    return res.value;
}

double pi_unnormalized(double r, double p, double a, double b, const QuadratureSpec& spec) {
    return r <= 1.0 ? pi_small_r(r, p, a, b, spec) : pi_large_r(r, p, a, b, spec);
}

double psi_log_t_integral(double z, double c, double alpha, double beta,
                          const QuadratureSpec& spec) {
    auto logf = [&](double t) { return c * std::log1p(-z * t); };
    LogIntegrationResult res = numerics::integrate_unit_log(logf, alpha, beta, spec);
    require_converged(res, "psi_general");
    return res.log_value;
}

/// log of v^{(p+n)/2} * int_0^1 t^{p/2+a}(1-t)^b (1-zt)^{-(p/2+a+b+2)}
/// exp(-v/(2(1-zt))) dt: the unnormalized part of f(v|z).
double log_f_unnormalized(double v, const MixtureDensityParams& params,
                          const QuadratureSpec& spec) {
    const double p = params.problem.p;
    const double n = params.problem.n;
    const double a = params.hyper.a;
    const double b = params.hyper.b;
    const double z = params.z;
    const double expo = 0.5 * p + a + b + 2.0;
    auto logf = [&](double t) {
        const double log1mzt = std::log1p(-z * t);
        return -expo * log1mzt - 0.5 * v * std::exp(-log1mzt);
    };
    LogIntegrationResult inner = numerics::integrate_unit_log(logf, 0.5 * p + a, b, spec);
    require_converged(inner, "f_density");
    return 0.5 * (p + n) * std::log(v) + inner.log_value;
}

double psi_endpoint_log(double z_endpoint, double j, double k, const Problem& problem,
                        const HyperParams& hyper) {
    const double p = problem.p;
    const double n = problem.n;
    const double gamma_arg = 0.5 * (p + n) + 1.0 + (0.5 * n - hyper.a) * j;
    const double pref = numerics::log_gamma(gamma_arg) + gamma_arg * std::log(2.0 * k);
    if (z_endpoint == 0.0)
        return pref + numerics::log_beta(0.5 * p + hyper.a + 1.0, hyper.b + 1.0);
    return pref + numerics::log_beta(0.5 * p + hyper.a + 1.0, (0.5 * n - hyper.a) * (j + 1.0));
}

}  // namespace

double prior_density_r(double r, const Problem& problem, const HyperParams& hyper,
                       const QuadratureSpec& spec) {
    problem.validate();
    hyper.validate();
    if (!(r >= 0.0)) throw std::domain_error("prior_density_r requires r >= 0");
    const double p = problem.p;
    const double a = hyper.a;
    const double b = hyper.b;
    const double log_norm = -0.5 * p * kLog2Pi - numerics::log_beta(a + 1.0, b + 1.0);
    if (r == 0.0) {
        if (!(b > 0.5 * p - 1.0))
            throw std::domain_error("prior_density_r diverges at r = 0 for b <= p/2 - 1");
        return std::exp(log_norm + numerics::log_beta(0.5 * p + a + 1.0, b - 0.5 * p + 1.0));
    }
    return std::exp(log_norm) * pi_unnormalized(r, p, a, b, spec);
}

double prior_density_deriv(double r, const Problem& problem, const HyperParams& hyper,
                           const QuadratureSpec& spec) {
    problem.validate();
    hyper.validate();
    if (!(r > 0.0)) throw std::domain_error("prior_density_deriv requires r > 0");
    // d/dr of the mixture adds one power of lambda/(1-lambda) to the kernel,
    // which is exactly the p+2 dimensional density up to a factor of -pi.
    Problem shifted{problem.p + 2, problem.n};
    return -std::numbers::pi * prior_density_r(r, shifted, hyper, spec);
}

double log_slope(double r, const Problem& problem, const HyperParams& hyper,
                 const QuadratureSpec& spec) {
    if (!(r > 0.0)) throw std::domain_error("log_slope requires r > 0");
    const double num = prior_density_deriv(r, problem, hyper, spec);
    const double den = prior_density_r(r, problem, hyper, spec);
    return r * num / den;
}

double psi_general_log(double z, double j, double k, const Problem& problem,
                       const HyperParams& hyper, const QuadratureSpec& spec) {
    problem.validate();
    hyper.validate();
    const double p = problem.p;
    const double n = problem.n;
    const double a = hyper.a;
    const double b = hyper.b;
    if (!(0.5 * n - a > 0.0)) throw std::domain_error("psi_general requires n/2 - a > 0");
    if (!(j > -1.0)) throw std::domain_error("psi_general requires j > -1");
    if (!(k > 0.0)) throw std::domain_error("psi_general requires k > 0");
    if (!(z >= 0.0) || !(z <= 1.0)) throw std::domain_error("psi_general requires z in [0,1]");

    if (z == 0.0 || z == 1.0) return psi_endpoint_log(z, j, k, problem, hyper);

    const double gamma_arg = 0.5 * (p + n) + 1.0 + (0.5 * n - a) * j;
    const double c = (0.5 * n - a) * (j + 1.0) - b - 1.0;
    const double pref = numerics::log_gamma(gamma_arg) + gamma_arg * std::log(2.0 * k);
    return pref + psi_log_t_integral(z, c, 0.5 * p + a, b, spec);
}

double psi_general(double z, double j, double k, const Problem& problem,
                   const HyperParams& hyper, const QuadratureSpec& spec) {
    return std::exp(psi_general_log(z, j, k, problem, hyper, spec));
}

double f_density(double v, const MixtureDensityParams& params, const QuadratureSpec& spec) {
    params.validate();
    if (!(v > 0.0)) throw std::domain_error("f_density requires v > 0");
    const double log_psi = psi_general_log(params.z, 0.0, 1.0, params.problem, params.hyper, spec);
    return std::exp(log_f_unnormalized(v, params, spec) - log_psi);
}

double f_density_log_unnormalized(double v, const MixtureDensityParams& params,
                                  const QuadratureSpec& spec) {
    params.validate();
    if (!(v > 0.0)) throw std::domain_error("f_density_log_unnormalized requires v > 0");
    return log_f_unnormalized(v, params, spec);
}

double f_log_moment(const MixtureDensityParams& params, int kpow, MomentRegion region,
                    double s, const QuadratureSpec& spec) {
    params.validate();
    if (kpow < 0) throw std::domain_error("f_log_moment requires kpow >= 0");
    if (region != MomentRegion::full && !(s > 0.0))
        throw std::domain_error("f_log_moment requires s > 0 for lower/upper regions");

    const double log_psi = psi_general_log(params.z, 0.0, 1.0, params.problem, params.hyper, spec);
    const QuadratureSpec inner = spec.tightened(0.01);
    auto integrand = [&](double v) {
        if (!(v > 0.0)) return 0.0;
        const double lf = log_f_unnormalized(v, params, inner) - log_psi;
        const double weight = kpow == 0 ? 1.0 : std::pow(std::abs(std::log(v)), kpow);
        const double fv = std::exp(lf);
        return std::isfinite(fv) ? weight * fv : 0.0;
    };

    const double vscale = params.problem.p + params.problem.n + 2.0;
    auto lower_part = [&](double cut) {
        std::vector<double> splits;
        if (cut > 1.0) splits.push_back(1.0);  // kink of |log v|
        IntegrationResult r = numerics::integrate_interval(integrand, 0.0, cut, spec, splits);
        require_converged(r, "f_log_moment(lower)");
        return r.value;
    };
    auto upper_part = [&](double cut) {
        std::vector<double> splits;
        if (cut < 1.0) splits.push_back(1.0 - cut);
        auto shifted = [&](double w) { return integrand(cut + w); };
        const double scale = std::max(1.0, vscale - cut);
        IntegrationResult r = numerics::integrate_positive_axis(shifted, spec, scale, splits);
        require_converged(r, "f_log_moment(upper)");
        return r.value;
    };

    switch (region) {
        case MomentRegion::lower: return lower_part(s);
        case MomentRegion::upper: return upper_part(s);
        case MomentRegion::full: return lower_part(1.0) + upper_part(1.0);
    }
    throw std::logic_error("f_log_moment: unknown region");
}

double h_blyth(double eta, int i) {
    if (!(eta > 0.0)) throw std::domain_error("h_blyth requires eta > 0");
    if (i < 1) throw std::domain_error("h_blyth requires i >= 1");
    return static_cast<double>(i) / (static_cast<double>(i) + std::abs(std::log(eta)));
}

double H_blyth(double eta, int i) {
    if (!(eta > 0.0)) throw std::domain_error("H_blyth requires eta > 0");
    if (i < 1) throw std::domain_error("H_blyth requires i >= 1");
    return 1.0 / (static_cast<double>(i) + std::abs(std::log(eta)));
}

double small_v_coefficient(double eps, const Problem& problem, const HyperParams& hyper,
                           const QuadratureSpec& spec) {
    problem.validate();
    hyper.validate();
    if (!(eps > 0.0) || !(eps < 1.0)) throw std::domain_error("small_v_coefficient requires eps in (0,1)");
    const double p = problem.p;
    const double a = hyper.a;
    const double b = hyper.b;
    const double t1 = std::min(psi_general(0.0, 0.0, 1.0, problem, hyper, spec),
                               psi_general(1.0, 0.0, 1.0, problem, hyper, spec));
    const double expo = 0.5 * p + a + 1.0 + eps * (b + 1.0);
    return std::pow(p + 2.0 * a + 2.0 + 2.0 * eps * (b + 1.0), expo) *
           std::exp(numerics::log_beta(0.5 * p + a + 1.0, (b + 1.0) * eps)) / t1;
}

SmallVConstants small_v_constants(int k, const Problem& problem, const HyperParams& hyper,
                                  const QuadratureSpec& spec) {
    problem.validate();
    hyper.validate();
    const double na = 0.5 * problem.n - hyper.a;
    if (!(na > 0.0)) throw std::domain_error("small_v_constants requires n/2 - a > 0");
    SmallVConstants c;
    c.epsilon_star = 0.25 * std::min(na / (hyper.b + 1.0), 2.0);
    const double t3 = small_v_coefficient(c.epsilon_star, problem, hyper, spec);
    if (k == 0) {
        c.c1_of_k = na - c.epsilon_star * (hyper.b + 1.0);
        c.c2_of_k = t3 / c.c1_of_k;
    } else {
        c.c1_of_k = na - c.epsilon_star * (hyper.b + 1.0) - 0.25 * na;
        c.c2_of_k = t3 / c.c1_of_k * std::pow(4.0 * k / na, k);
    }
    return c;
}

double upper_tail_coefficient(int k, const Problem& problem, const HyperParams& hyper,
                              const QuadratureSpec& spec) {
    problem.validate();
    hyper.validate();
    const double na = 0.5 * problem.n - hyper.a;
    if (!(na > 0.0)) throw std::domain_error("upper_tail_coefficient requires n/2 - a > 0");
    auto t1 = [&](double j, double kk) {
        return std::min(psi_general(0.0, j, kk, problem, hyper, spec),
                        psi_general(1.0, j, kk, problem, hyper, spec));
    };
    auto t2 = [&](double j, double kk) {
        return std::max(psi_general(0.0, j, kk, problem, hyper, spec),
                        psi_general(1.0, j, kk, problem, hyper, spec));
    };
    if (k == 0) return t2(0.0, 2.0) / t1(0.0, 1.0);
    return std::pow(2.0 * k / na, k) * (t2(-0.5, 2.0) + t2(0.5, 2.0)) / t1(0.0, 1.0);
}

}  // namespace gbshrink::prior
