#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

namespace gbshrink::numerics {

/// Thrown when an adaptive integration fails to converge and the caller
/// requested a hard value rather than an IntegrationResult.
class QuadratureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Knobs for the adaptive Gauss-Kronrod driver. The defaults are chosen so
/// that the closed-form cross-checks in the test suite pass at 1e-8.
struct QuadratureSpec {
    double relative_tolerance = 1e-10;
    double absolute_tolerance = 1e-14;
    int max_subdivisions = 200;
    int base_nodes = 31;   ///< Kronrod rule size: one of 15, 21, 31, 41, 51, 61

    void validate() const;

    /// Copy with tolerances tightened by `factor` (used for inner integrals
    /// of nested quadratures).
    QuadratureSpec tightened(double factor) const;
};

struct IntegrationResult {
    double value = 0.0;
    double error_estimate = 0.0;
    bool converged = false;
};

/// Result of a log-space integration of a positive integrand.
struct LogIntegrationResult {
    double log_value = 0.0;        ///< log of the integral
    double relative_error = 0.0;   ///< error estimate relative to the value
    bool converged = false;
};

using Integrand = std::function<double(double)>;

/// ln Gamma(x) for x > 0. Relative error <= 1e-13 on [1e-3, 1e6].
double log_gamma(double x);

/// ln B(a, b) for a, b > 0.
double log_beta(double a, double b);

/// Adaptive integration of f over the finite interval [a, b].
/// `interior_splits` forces initial subdivision points (kinks, layers).
IntegrationResult integrate_interval(const Integrand& f, double a, double b,
                                     const QuadratureSpec& spec,
                                     const std::vector<double>& interior_splits = {});

/// Integrates u^alpha (1-u)^beta f(u) over (0,1) for alpha, beta > -1.
/// Endpoint singularities (exponent in (-1,0)) are removed by the explicit
/// power substitution v = u^(alpha+1) (resp. (1-u)^(beta+1)) on the
/// corresponding half, so the result converges for any alpha, beta > -1.
IntegrationResult integrate_unit(const Integrand& f, double alpha, double beta,
                                 const QuadratureSpec& spec);

/// Integrates f over (0, infinity) through the fixed rational map
/// v = scale * u / (1 - u). The map (and the scale) is part of the call
/// contract, so results are reproducible bit-for-bit given a spec.
IntegrationResult integrate_positive_axis(const Integrand& f, const QuadratureSpec& spec,
                                          double scale = 1.0,
                                          const std::vector<double>& interior_splits = {});

/// Integrates every entry of `fs` over [a, b] on one shared adaptive
/// partition. Refinement is driven by the worst per-integrand error, so
/// ratio identities between the results (e.g. Cauchy-Schwarz) hold on the
/// exact same node set.
std::vector<IntegrationResult> integrate_interval_shared(
    const std::vector<Integrand>& fs, double a, double b, const QuadratureSpec& spec,
    const std::vector<double>& interior_splits = {});

/// Integrates exp(logf(u)) u^alpha (1-u)^beta over (0,1) in log space:
/// the maximum exponent over a probe grid is subtracted before
/// exponentiation and restored in the returned log value.
LogIntegrationResult integrate_unit_log(const std::function<double(double)>& logf,
                                        double alpha, double beta,
                                        const QuadratureSpec& spec);

struct PoissonTerm {
    int index = 0;
    double weight = 0.0;
};

/// Poisson(ncp_half) probabilities w_j = e^-m m^j / j!, trimmed so the
/// discarded mass is below tail_tolerance. Terms are returned in index
/// order; the retained weights sum to 1 within tail_tolerance.
std::vector<PoissonTerm> poisson_weights(double ncp_half, double tail_tolerance);

}  // namespace gbshrink::numerics
