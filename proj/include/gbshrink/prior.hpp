#pragma once

#include "gbshrink/numerics.hpp"

#include <stdexcept>

namespace gbshrink::prior {

using numerics::QuadratureSpec;

/// Sampling configuration: X is p-variate, S carries n degrees of freedom.
struct Problem {
    int p = 1;
    int n = 1;

    void validate() const {
        if (p < 1 || n < 1) throw std::domain_error("Problem requires p >= 1 and n >= 1");
    }
};

/// Exponents (a, b) of the beta mixing density on the shrinkage weight.
struct HyperParams {
    double a = 0.0;
    double b = 0.0;

    void validate() const {
        if (!(a > -1.0) || !(b > -1.0))
            throw std::domain_error("HyperParams requires a > -1 and b > -1");
    }
};

/// Parameters of the conditional density f(v|z) on the rescaled precision.
struct MixtureDensityParams {
    Problem problem;
    HyperParams hyper;
    double z = 0.0;   ///< in [0, 1)

    void validate() const {
        problem.validate();
        hyper.validate();
        if (!(z >= 0.0) || !(z < 1.0))
            throw std::domain_error("MixtureDensityParams requires 0 <= z < 1");
        if (!(0.5 * problem.n - hyper.a > 0.0))
            throw std::domain_error("MixtureDensityParams requires n/2 - a > 0");
    }
};

/// Radial prior density pi(r|a,b): the scale mixture of the p-variate
/// normal kernel over the beta-distributed shrinkage weight, evaluated at
/// r = eta*|theta|^2. Strictly positive and strictly decreasing in r.
/// At r = 0 the value is finite only for b > p/2 - 1.
double prior_density_r(double r, const Problem& problem, const HyperParams& hyper,
                       const QuadratureSpec& spec);

/// d/dr of prior_density_r; negative for all r > 0.
double prior_density_deriv(double r, const Problem& problem, const HyperParams& hyper,
                           const QuadratureSpec& spec);

/// r * pi'(r)/pi(r). Bounded on (0, infinity) with limits
/// -(p/2+a+1) as r -> infinity and, as r -> 0,
/// -(p/2-1-b) when -1 < b < p/2-1 and 0 when b >= p/2-1.
double log_slope(double r, const Problem& problem, const HyperParams& hyper,
                 const QuadratureSpec& spec);

/// psi(z; j, k): the two-parameter extension of the f(v|z) normalizer,
/// evaluated through its one-dimensional closed form (the v-integral is a
/// Gamma function). Requires n/2 - a > 0, j > -1, k > 0 and z in [0,1].
double psi_general(double z, double j, double k, const Problem& problem,
                   const HyperParams& hyper, const QuadratureSpec& spec);

/// log of psi_general (the form used inside density ratios).
double psi_general_log(double z, double j, double k, const Problem& problem,
                       const HyperParams& hyper, const QuadratureSpec& spec);

/// The conditional density f(v|z) on v in (0, infinity).
double f_density(double v, const MixtureDensityParams& params, const QuadratureSpec& spec);

/// log of f(v|z) before dividing by the normalizer psi(z). Moment code
/// built on ratios of these integrals never needs psi at all.
double f_density_log_unnormalized(double v, const MixtureDensityParams& params,
                                  const QuadratureSpec& spec);

enum class MomentRegion { lower, upper, full };

/// Integral of |log v|^kpow f(v|z) over (0,s), (s,infinity) or (0,infinity).
double f_log_moment(const MixtureDensityParams& params, int kpow, MomentRegion region,
                    double s, const QuadratureSpec& spec);

/// Tapering factor h_i(eta) = i / (i + |log eta|) of the proper-prior
/// sequence; equals 1 iff eta = 1 and increases pointwise in i.
double h_blyth(double eta, int i);

/// H_i(eta) = h_i(eta) / i.
double H_blyth(double eta, int i);

/// Constants from the small-v analysis of f(v|z); computed from the explicit
/// formulas rather than carried as abstract existence constants.
struct SmallVConstants {
    double epsilon_star = 0.0;        ///< (1/4) min((n/2-a)/(b+1), 2)
    double c1_of_k = 0.0;             ///< C1(k)
    double c2_of_k = 0.0;             ///< C2(k)
};

/// C1(k), C2(k) and epsilon_star for the lower-tail moment bound.
SmallVConstants small_v_constants(int k, const Problem& problem, const HyperParams& hyper,
                                  const QuadratureSpec& spec);

/// T3(eps): coefficient of the uniform small-v bound f(v|z) <= T3 v^(n/2-a-1-eps(b+1)).
double small_v_coefficient(double eps, const Problem& problem, const HyperParams& hyper,
                           const QuadratureSpec& spec);

/// C3(k): coefficient of the upper-tail bound exp(s/4) int_s^inf |log v|^k f <= C3(k).
double upper_tail_coefficient(int k, const Problem& problem, const HyperParams& hyper,
                              const QuadratureSpec& spec);

}  // namespace gbshrink::prior
