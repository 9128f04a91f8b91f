#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gbshrink/numerics.hpp"
#include "gbshrink/prior.hpp"
#include "oracles.hpp"

#include <cmath>
#include <random>

using namespace gbshrink::prior;
using gbshrink::numerics::QuadratureSpec;
using gbshrink::numerics::log_beta;
using gbshrink::numerics::log_gamma;

namespace {

const QuadratureSpec kSpec;

/// independent route: pi(r) (2pi)^{p/2} B(a+1,b+1) = int_0^inf
/// xi^{p/2+a} (1+xi)^{-a-b-2} e^{-r xi/2} dxi, composite Gauss-Legendre
double pi_oracle(double r, int p, double a, double b) {
    auto f = [&](double xi) {
        return std::exp((0.5 * p + a) * std::log(xi) - (a + b + 2.0) * std::log1p(xi) -
                        0.5 * r * xi);
    };
    const double scale = (0.5 * p + a + 1.0) * 2.0 / r + 1.0;
    const double raw = oracles::integrate_to_inf(f, 0.0, scale, 1e-12);
    return raw * std::exp(-0.5 * p * std::log(2.0 * M_PI) - log_beta(a + 1.0, b + 1.0));
}

}  // namespace

TEST_CASE("prior_density_r matches an independent evaluation route") {
    const Problem pr{5, 7};
    const HyperParams hy{-0.3, 0.4};
    for (double r : {0.05, 0.3, 1.0, 3.0, 20.0}) {
        const double val = prior_density_r(r, pr, hy, kSpec);
        const double ref = pi_oracle(r, pr.p, hy.a, hy.b);
        CHECK(val == doctest::Approx(ref).epsilon(1e-9));
    }
}

TEST_CASE("prior_density_r closed form at r = 0") {
    // (p,a,b) = (4,0,3): pi(0) = (2pi)^-2 B(3,2)/B(1,4)
    const Problem pr{4, 4};
    const HyperParams hy{0.0, 3.0};
    const double expected =
        std::exp(-2.0 * std::log(2.0 * M_PI) + log_beta(3.0, 2.0) - log_beta(1.0, 4.0));
    CHECK(prior_density_r(0.0, pr, hy, kSpec) == doctest::Approx(expected).epsilon(1e-14));
    // continuity from the right
    CHECK(prior_density_r(1e-9, pr, hy, kSpec) == doctest::Approx(expected).epsilon(1e-6));
    // divergent case rejected
    CHECK_THROWS_AS(prior_density_r(0.0, pr, HyperParams{0.0, 0.0}, kSpec), std::domain_error);
}

TEST_CASE("prior_density_r is positive and strictly decreasing") {
    const Problem pr{6, 5};
    const HyperParams hy{-0.5, 0.0};
    double prev = std::numeric_limits<double>::infinity();
    for (double r : {1e-6, 1e-3, 0.1, 0.5, 1.0, 2.0, 10.0, 1e3, 1e6}) {
        const double val = prior_density_r(r, pr, hy, kSpec);
        CHECK(val > 0.0);
        CHECK(val < prev);
        prev = val;
    }
}

TEST_CASE("prior_density_r route continuity at the r = 1 switch") {
    const Problem pr{10, 10};
    const HyperParams hy{-0.5, 0.0};
    const double lo = prior_density_r(1.0 - 1e-9, pr, hy, kSpec);
    const double hi = prior_density_r(1.0 + 1e-9, pr, hy, kSpec);
    CHECK(lo == doctest::Approx(hi).epsilon(1e-8));
}

TEST_CASE("prior_density_r tail matches the power-law asymptote") {
    // (2pi)^{p/2} B(a+1,b+1) pi(r) (r/2)^{p/2+a+1} -> Gamma(p/2+a+1)
    const Problem pr{10, 10};
    const HyperParams hy{-0.5, 0.0};
    const double r = 1e8;
    const double lhs = prior_density_r(r, pr, hy, kSpec) *
                       std::exp(0.5 * pr.p * std::log(2.0 * M_PI) +
                                log_beta(hy.a + 1.0, hy.b + 1.0) +
                                (0.5 * pr.p + hy.a + 1.0) * std::log(0.5 * r));
    CHECK(lhs == doctest::Approx(std::exp(log_gamma(0.5 * pr.p + hy.a + 1.0))).epsilon(0.02));
}

TEST_CASE("prior_density_r small-r power law for -1 < b < p/2 - 1") {
    // (2pi)^{p/2} B(a+1,b+1) pi(r) ~ Gamma(p/2-b-1)(2/r)^{p/2-b-1}
    const Problem pr{4, 4};
    const HyperParams hy{0.0, 0.0};
    const double r = 1e-8;
    const double lhs = prior_density_r(r, pr, hy, kSpec) *
                       std::exp(0.5 * pr.p * std::log(2.0 * M_PI) +
                                log_beta(hy.a + 1.0, hy.b + 1.0) -
                                (0.5 * pr.p - hy.b - 1.0) * std::log(2.0 / r));
    CHECK(lhs == doctest::Approx(std::exp(log_gamma(0.5 * pr.p - hy.b - 1.0))).epsilon(0.02));
}

TEST_CASE("prior_density_deriv sign and finite-difference oracle") {
    const Problem pr{5, 5};
    const HyperParams hy{-0.2, 0.3};
    for (double r : {0.2, 1.0, 4.0}) {
        CHECK(prior_density_deriv(r, pr, hy, kSpec) < 0.0);
    }
    const double grad = prior_density_deriv(1.0, pr, hy, kSpec);
    auto fd = [&](double h) {
        return (prior_density_r(1.0 + h, pr, hy, kSpec) -
                prior_density_r(1.0 - h, pr, hy, kSpec)) /
               (2.0 * h);
    };
    const double err4 = std::abs(fd(1e-4) - grad);
    const double err3 = std::abs(fd(1e-3) - grad);
    CHECK(std::abs(fd(1e-4) / grad - 1.0) < 1e-6);
    // O(h^2): shrinking h by 10 should cut the error by roughly 100
    CHECK(err3 / err4 > 20.0);
    CHECK_THROWS_AS(prior_density_deriv(0.0, pr, hy, kSpec), std::domain_error);
}

TEST_CASE("log_slope limits") {
    // r -> infinity: -(p/2 + a + 1)
    CHECK(log_slope(1e8, Problem{10, 10}, HyperParams{-0.5, 0.0}, kSpec) ==
          doctest::Approx(-5.5).epsilon(0.02));
    // r -> 0 with -1 < b < p/2 - 1: -(p/2 - 1 - b)
    CHECK(log_slope(1e-8, Problem{4, 4}, HyperParams{0.0, 0.0}, kSpec) ==
          doctest::Approx(-1.0).epsilon(0.02));
    // r -> 0 with b >= p/2 - 1: 0
    CHECK(std::abs(log_slope(1e-8, Problem{4, 4}, HyperParams{0.0, 5.0}, kSpec)) < 0.02);
}

TEST_CASE("log_slope bounded over the full log grid") {
    const Problem pr{6, 8};
    const HyperParams hy{-0.4, 0.2};
    double sup = 0.0;
    for (int k = 0; k <= 32; ++k) {
        const double r = std::pow(10.0, -8.0 + 16.0 * k / 32.0);
        const double s = log_slope(r, pr, hy, kSpec);
        CHECK(std::isfinite(s));
        CHECK(s < 0.0);
        sup = std::max(sup, std::abs(s));
    }
    // the two endpoint limits bound the magnitude
    const double limit_inf = 0.5 * pr.p + hy.a + 1.0;
    const double limit_zero = std::max(0.0, 0.5 * pr.p - 1.0 - hy.b);
    CHECK(sup <= std::max(limit_inf, limit_zero) * 1.05);
}

TEST_CASE("psi_general endpoint closed forms") {
    const Problem pr{4, 4};
    const HyperParams hy{0.0, 0.0};
    CHECK(psi_general(0.0, 0.0, 1.0, pr, hy, kSpec) == doctest::Approx(256.0).epsilon(1e-12));
    CHECK(psi_general(1.0, 0.0, 1.0, pr, hy, kSpec) == doctest::Approx(64.0).epsilon(1e-12));
}

TEST_CASE("psi_general stays between its endpoint values and is monotone") {
    const Problem pr{10, 10};
    const HyperParams hy{-2.0 / 7.0, 5.0 + 2.0 / 7.0 - 2.0};
    for (auto jk : {std::pair{0.0, 1.0}, std::pair{-0.5, 2.0}, std::pair{0.5, 2.0}}) {
        const double lo = psi_general(0.0, jk.first, jk.second, pr, hy, kSpec);
        const double hi = psi_general(1.0, jk.first, jk.second, pr, hy, kSpec);
        const double lo_b = std::min(lo, hi);
        const double hi_b = std::max(lo, hi);
        double prev = lo;
        const bool increasing = hi >= lo;
        for (int k = 1; k <= 20; ++k) {
            const double z = static_cast<double>(k) / 21.0;
            const double v = psi_general(z, jk.first, jk.second, pr, hy, kSpec);
            CHECK(v >= lo_b * (1.0 - 1e-10));
            CHECK(v <= hi_b * (1.0 + 1e-10));
            if (increasing) {
                CHECK(v >= prev * (1.0 - 1e-10));
            } else {
                CHECK(v <= prev * (1.0 + 1e-10));
            }
            prev = v;
        }
    }
}

TEST_CASE("psi_general agrees with the raw 2-D integral") {
    const Problem pr{5, 6};
    const HyperParams hy{-0.4, 0.7};
    const double p = pr.p;
    const double n = pr.n;
    for (auto jk : {std::pair{0.0, 1.0}, std::pair{0.5, 2.0}}) {
        const double j = jk.first;
        const double k = jk.second;
        const double m_exp = 0.5 * (p + n) + (0.5 * n - hy.a) * j;
        for (double z : {0.25, 0.8}) {
            auto v_integral = [&](double t) {
                const double omzt = 1.0 - z * t;
                auto g = [&](double v) {
                    return std::exp(m_exp * std::log(v) - v / (2.0 * k * omzt));
                };
                return std::pow(omzt, -(0.5 * p + hy.a + hy.b + 2.0)) *
                       oracles::integrate_to_inf(g, 0.0, 2.0 * k * (m_exp + 1.0), 1e-12);
            };
            const double raw = oracles::integrate_unit_weighted(
                v_integral, 0.5 * p + hy.a, hy.b, 1e-12);
            CHECK(psi_general(z, j, k, pr, hy, kSpec) == doctest::Approx(raw).epsilon(1e-8));
        }
    }
}

TEST_CASE("psi_general rejects invalid parameters") {
    const Problem pr{4, 4};
    CHECK_THROWS_AS(psi_general(0.5, 0.0, 1.0, pr, HyperParams{2.5, 0.0}, kSpec),
                    std::domain_error);  // n/2 - a <= 0
    CHECK_THROWS_AS(psi_general(0.5, -1.0, 1.0, pr, HyperParams{0.0, 0.0}, kSpec),
                    std::domain_error);  // j <= -1
    CHECK_THROWS_AS(psi_general(0.5, 0.0, 0.0, pr, HyperParams{0.0, 0.0}, kSpec),
                    std::domain_error);  // k <= 0
    CHECK_THROWS_AS(psi_general(1.5, 0.0, 1.0, pr, HyperParams{0.0, 0.0}, kSpec),
                    std::domain_error);  // z outside [0,1]
}

TEST_CASE("f_density normalizes to 1") {
    MixtureDensityParams params;
    params.problem = Problem{10, 10};
    params.hyper = HyperParams{-2.0 / 7.0, 5.0 + 2.0 / 7.0 - 2.0};
    for (double z : {0.0, 0.5, 0.99}) {
        params.z = z;
        const double mass = f_log_moment(params, 0, MomentRegion::full, 1.0, kSpec);
        CHECK(mass == doctest::Approx(1.0).epsilon(1e-6));
    }
}

TEST_CASE("f_density normalizes for random parameter triples") {
    std::mt19937 gen(424242);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int k = 0; k < 10; ++k) {
        MixtureDensityParams params;
        params.problem = Problem{3 + static_cast<int>(unif(gen) * 8),
                                 3 + static_cast<int>(unif(gen) * 8)};
        // keep n/2 - a > 0 with margin
        params.hyper.a = -0.9 + unif(gen) * (0.5 * params.problem.n - 0.2 + 0.9);
        params.hyper.b = -0.9 + unif(gen) * 3.0;
        params.z = unif(gen) * 0.95;
        const double mass = f_log_moment(params, 0, MomentRegion::full, 1.0, kSpec);
        CHECK(mass == doctest::Approx(1.0).epsilon(1e-6));
    }
}

TEST_CASE("f_density at z = 0 is the Gamma((p+n)/2 + 1, scale 2) density") {
    MixtureDensityParams params;
    params.problem = Problem{7, 5};
    params.hyper = HyperParams{-0.3, 0.6};
    params.z = 0.0;
    const double shape = 0.5 * (params.problem.p + params.problem.n) + 1.0;
    for (double v : {0.5, 2.0, 10.0, 30.0}) {
        const double ref =
            std::exp((shape - 1.0) * std::log(v) - 0.5 * v - log_gamma(shape) - shape * std::log(2.0));
        CHECK(f_density(v, params, kSpec) == doctest::Approx(ref).epsilon(1e-10));
    }
}

TEST_CASE("f_density respects the uniform small-v bound") {
    MixtureDensityParams params;
    params.problem = Problem{5, 5};
    params.hyper = HyperParams{-0.5, 0.0};
    const auto consts = small_v_constants(0, params.problem, params.hyper, kSpec);
    const double t3 = small_v_coefficient(consts.epsilon_star, params.problem, params.hyper, kSpec);
    const double expo = 0.5 * params.problem.n - params.hyper.a - 1.0 -
                        consts.epsilon_star * (params.hyper.b + 1.0);
    for (double z : {0.1, 0.6, 0.95}) {
        params.z = z;
        for (double v : {1e-4, 1e-2, 0.3, 0.9}) {
            const double bound = t3 * std::pow(v, expo);
            CHECK(f_density(v, params, kSpec) <= bound * (1.0 + 1e-9));
        }
    }
}

TEST_CASE("f_log_moment lower tail vanishes at least at the guaranteed rate") {
    MixtureDensityParams params;
    params.problem = Problem{5, 5};
    params.hyper = HyperParams{-0.5, 0.0};
    params.z = 0.7;
    const auto consts = small_v_constants(0, params.problem, params.hyper, kSpec);
    // slope of log F(s) on a log-log grid
    const double s_lo = 1e-2, s_hi = 1e-1;
    const double f_lo = f_log_moment(params, 0, MomentRegion::lower, s_lo, kSpec);
    const double f_hi = f_log_moment(params, 0, MomentRegion::lower, s_hi, kSpec);
    const double slope = (std::log(f_hi) - std::log(f_lo)) / (std::log(s_hi) - std::log(s_lo));
    CHECK(slope >= consts.c1_of_k * 0.99);
    // the explicit bound C2(0) s^C1(0) holds as well
    CHECK(f_lo <= consts.c2_of_k * std::pow(s_lo, consts.c1_of_k) * (1.0 + 1e-9));
}

TEST_CASE("f_log_moment upper tail is exponentially small with the stated coefficient") {
    MixtureDensityParams params;
    params.problem = Problem{5, 5};
    params.hyper = HyperParams{-0.5, 0.0};
    params.z = 0.4;
    const double c3 = upper_tail_coefficient(1, params.problem, params.hyper, kSpec);
    for (double s : {1.0, 5.0, 12.0, 40.0}) {
        const double tail = f_log_moment(params, 1, MomentRegion::upper, s, kSpec);
        CHECK(std::exp(0.25 * s) * tail <= c3 * (1.0 + 1e-9));
    }
}

TEST_CASE("f_log_moment full normalization and region additivity") {
    MixtureDensityParams params;
    params.problem = Problem{6, 7};
    params.hyper = HyperParams{0.2, 0.5};
    params.z = 0.3;
    const double full = f_log_moment(params, 0, MomentRegion::full, 1.0, kSpec);
    const double lower = f_log_moment(params, 0, MomentRegion::lower, 2.5, kSpec);
    const double upper = f_log_moment(params, 0, MomentRegion::upper, 2.5, kSpec);
    CHECK(full == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(lower + upper == doctest::Approx(full).epsilon(1e-8));
}

TEST_CASE("h_blyth pointwise values and properties") {
    CHECK(h_blyth(1.0, 1) == 1.0);
    CHECK(h_blyth(std::exp(2.0), 2) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(H_blyth(std::exp(2.0), 2) == doctest::Approx(0.25).epsilon(1e-15));

    std::mt19937 gen(777);
    std::uniform_real_distribution<double> unif(-20.0, 20.0);
    for (int k = 0; k < 200; ++k) {
        const double eta = std::exp(unif(gen));
        const int i = 1 + k % 40;
        const double h = h_blyth(eta, i);
        CHECK(h > 0.0);
        CHECK(h <= 1.0);
        CHECK(h == doctest::Approx(h_blyth(1.0 / eta, i)).epsilon(1e-12));
        CHECK(h_blyth(eta, i + 1) >= h);
        CHECK((h == 1.0) == (eta == 1.0));
    }
    CHECK_THROWS_AS(h_blyth(0.0, 1), std::domain_error);
    CHECK_THROWS_AS(h_blyth(1.0, 0), std::domain_error);
}

TEST_CASE("MixtureDensityParams validation") {
    MixtureDensityParams params;
    params.problem = Problem{4, 4};
    params.hyper = HyperParams{0.0, 0.0};
    params.z = 1.0;  // z must stay below 1
    CHECK_THROWS_AS(params.validate(), std::domain_error);
    params.z = 0.5;
    params.hyper.a = 2.5;  // n/2 - a <= 0
    CHECK_THROWS_AS(params.validate(), std::domain_error);
}
