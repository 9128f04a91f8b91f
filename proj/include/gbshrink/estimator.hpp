#pragma once

#include "gbshrink/prior.hpp"

#include <string>
#include <vector>

namespace gbshrink::estimator {

using numerics::QuadratureSpec;
using prior::HyperParams;
using prior::Problem;

/// A data point (x, s) together with the derived statistics the estimator
/// actually depends on: w = |x|^2/s and z = w/(1+w).
struct Observation {
    std::vector<double> x;
    double s = 1.0;
    double w = 0.0;
    double z = 0.0;

    Observation(std::vector<double> x_in, double s_in);
};

enum class Mode { general_quadrature, closed_form };

struct EstimatorSpec {
    Problem problem;
    HyperParams hyper;
    Mode mode = Mode::general_quadrature;
    QuadratureSpec quadrature;

    /// closed_form requires b = n/2 - a - 2 (within 1e-12).
    void validate() const;
};

struct ConditionCheck {
    std::string id;
    bool passed = false;
};

struct RegionVerdict {
    bool admissible = false;
    bool minimax = false;
    std::vector<ConditionCheck> reasons;
};

/// Posterior mean of the shrinkage weight at w = |x|^2/s; always in (0,1).
/// The estimator is delta = (1 - shrink_fraction(w)) * x, which is
/// singularity-free at w = 0.
double shrink_fraction(double w, const EstimatorSpec& spec);

/// phi(w) = w * shrink_fraction(w).
double phi(double w, const EstimatorSpec& spec);

/// The generalized Bayes point estimate (1 - shrink_fraction(w)) x.
std::vector<double> estimate(const Observation& obs, const EstimatorSpec& spec);

/// Largest prior exponent a for which the phi limit respects the Baranchik
/// bound 2(p-2)/(n+2).
double xi(const Problem& problem);

struct BaranchikResult {
    bool passed = false;
    std::string failure;       ///< empty when passed
    int violation_index = -1;  ///< sample index of the first violation
};

/// Checks a sampled phi sequence for the Baranchik sufficient condition:
/// nondecreasing (1e-12 slack for float noise) and inside [0, 2(p-2)/(n+2)].
BaranchikResult baranchik_check(const std::vector<double>& phi_values, const Problem& problem);

/// Admissibility / minimaxity classification of (p, n, a, b).
RegionVerdict classify(const Problem& problem, const HyperParams& hyper);

}  // namespace gbshrink::estimator
