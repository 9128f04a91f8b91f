#pragma once

#include "gbshrink/prior.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace gbshrink::blyth {

using numerics::QuadratureSpec;
using prior::HyperParams;
using prior::Problem;

struct BoundCheckPoint {
    std::map<std::string, double> coords;
    double statistic = 0.0;
    bool ok = true;
};

/// Record of an empirical boundedness verification over a grid.
struct BoundCheckReport {
    std::string quantity;
    std::string grid;
    double sup_statistic = 0.0;
    bool passed = false;
    std::vector<BoundCheckPoint> details;
};

/// Default grids spanning both logarithmic regimes of the s-bounds.
std::vector<double> default_s_grid();  ///< 25 log-spaced points in [1e-6, 1e6]
std::vector<double> default_z_set();   ///< {0, 0.3, 0.7, 0.99}
std::vector<int> default_i_set();      ///< {1, 10, 100}

/// B_i(x,s) = 1 - (E[H_i(V/s)|z])^2 / E[H_i^2(V/s)|z] with V ~ f(.|z).
/// Always in [0,1) by Cauchy-Schwarz; numerator and denominator moments are
/// evaluated on one shared node set so the inequality holds as computed.
double b_i(double s, double z, int i, const Problem& problem, const HyperParams& hyper,
           const QuadratureSpec& spec);

/// b_i for several i at once, all moments on the same shared node set.
std::vector<double> b_i_set(double s, double z, const std::vector<int>& i_set,
                            const Problem& problem, const HyperParams& hyper,
                            const QuadratureSpec& spec);

/// sup over (i, z) of B_i(s,z) * (1 + |log s|)^2 per grid point s; passes
/// when a single finite cap (twice the coarse-grid sup) bounds the full grid.
BoundCheckReport b_i_bound_profile(const std::vector<int>& i_set,
                                   const std::vector<double>& s_grid,
                                   const std::vector<double>& z_set, const Problem& problem,
                                   const HyperParams& hyper, const QuadratureSpec& spec);

/// A(x,s): the mixed moment of the prior against k(r)/r, evaluated through
/// the three-layer reduction: lambda quadrature x eta quadrature x
/// Poisson-weighted central chi-square moments (conditional on (lambda,eta),
/// eta|theta|^2/(1-lambda) is noncentral chi-square with p degrees of
/// freedom and noncentrality (1-lambda) eta |x|^2).
double a_quantity(double x_norm, double s, const Problem& problem, const HyperParams& hyper,
                  const QuadratureSpec& spec, double poisson_tail = 1e-12);

/// Monte Carlo estimate of the same quantity by direct p-dimensional
/// sampling; independent cross-check of the chi-square reduction.
double a_quantity_mc(double x_norm, double s, const Problem& problem, const HyperParams& hyper,
                     std::uint64_t reps, std::uint64_t seed, double* std_error = nullptr);

/// sup over the grid of A(x,s) * s^(p/2+1) * (1+|x|^2/s)^(p/2+1/2); passes
/// when finite and stable under refinement of the (x,s) grid. When
/// mc_reps > 0 the deterministic value is also cross-checked by Monte Carlo
/// at the first grid tuple.
BoundCheckReport a_bound_check(const std::vector<double>& x_norm_grid,
                               const std::vector<double>& s_grid, const Problem& problem,
                               const HyperParams& hyper, std::uint64_t mc_reps, std::uint64_t seed,
                               const QuadratureSpec& spec);

/// Q2 = int_0^1 pi(r)r^(p/2-3/2) dr / int_0^1 pi(r)r^(p/2-1) dr; > 1.
double q2_constant(const Problem& problem, const HyperParams& hyper, const QuadratureSpec& spec);

/// Randomized pointwise verification of the four elementary inequalities
/// used by the tail bounds. Zero violations expected.
BoundCheckReport inequality_suite(int sample_count, std::uint64_t seed);

/// Numeric check of int eta^-1 h_i^2 deta = 2i for each i, the equal mass of
/// the (0,1) and (1,infinity) halves, and the factorization of the proper
/// prior mass as (theta mass = 1) * (2i).
BoundCheckReport h_integral_check(const std::vector<int>& i_set, const Problem& problem,
                                  const HyperParams& hyper, const QuadratureSpec& spec);

}  // namespace gbshrink::blyth
