#pragma once

#include "gbshrink/estimator.hpp"

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace gbshrink::risk {

using estimator::EstimatorSpec;
using estimator::Observation;
using prior::Problem;

/// A parameter configuration (theta, eta) with eta = 1/sigma^2.
struct ParameterPoint {
    std::vector<double> theta;
    double eta = 1.0;

    void validate() const {
        if (!(eta > 0.0)) throw std::domain_error("ParameterPoint requires eta > 0");
    }
};

struct RiskEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::uint64_t reps = 0;
    std::uint64_t seed = 0;
};

/// Deterministic seed for a derived stream: two splitmix64 steps of
/// master ^ (golden_gamma * (index + 1)). Rows of a risk curve draw their
/// seeds through this, so per-row results do not depend on evaluation order.
std::uint64_t derive_stream_seed(std::uint64_t master, std::uint64_t index);

/// Deterministic random source. All distributions are implemented
/// explicitly (polar normal, Marsaglia-Tsang gamma) on top of mt19937_64,
/// so sequences are identical across platforms given the seed.
class Rng {
public:
    explicit Rng(std::uint64_t seed);

    double uniform();                        ///< strictly inside (0,1)
    double normal();                         ///< standard normal
    double gamma(double shape, double scale);
    double chi_square(double df);            ///< Gamma(df/2, scale 2)

private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

/// One draw from the sampling model: x = theta + sigma Z, s = sigma^2 G with
/// G chi-square on n degrees of freedom, independent of Z.
Observation sample_observation(const ParameterPoint& point, const Problem& problem, Rng& rng);

/// Scaled quadratic loss eta * |d - theta|^2.
double loss(const std::vector<double>& d, const ParameterPoint& point);

using EstimatorFn = std::function<std::vector<double>(const Observation&)>;

/// delta(x, s) = x; the constant-risk baseline.
EstimatorFn identity_estimator();

/// Monte Carlo risk of an arbitrary decision rule.
RiskEstimate mc_risk_fn(const EstimatorFn& fn, const Problem& problem, const ParameterPoint& point,
                        std::uint64_t reps, std::uint64_t seed);

/// Monte Carlo risk of the generalized Bayes estimator described by `spec`.
RiskEstimate mc_risk(const EstimatorSpec& spec, const ParameterPoint& point, std::uint64_t reps,
                     std::uint64_t seed);

struct RiskRow {
    double theta_norm = 0.0;
    RiskEstimate estimate;
};

/// Risk along |theta| with theta placed on the first axis (risk depends on
/// theta only through its norm). Row seeds come from derive_stream_seed.
std::vector<RiskRow> risk_curve(const EstimatorSpec& spec, const std::vector<double>& theta_norm_grid,
                                double eta, std::uint64_t reps, std::uint64_t seed);

std::vector<RiskRow> risk_curve_fn(const EstimatorFn& fn, const Problem& problem,
                                   const std::vector<double>& theta_norm_grid, double eta,
                                   std::uint64_t reps, std::uint64_t seed);

}  // namespace gbshrink::risk
