#include "gbshrink/risk.hpp"

#include <cmath>
#include <stdexcept>

namespace gbshrink::risk {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

}  // namespace

std::uint64_t derive_stream_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t x = master ^ (0x9E3779B97F4A7C15ull * (index + 1));
    splitmix64(x);
    return splitmix64(x);
}

Rng::Rng(std::uint64_t seed) : engine_(seed) {}

double Rng::uniform() {
    // 53 random bits shifted into (0,1); the +0.5 keeps 0 out of range.
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double Rng::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u, v, s;
    do {
        u = 2.0 * uniform() - 1.0;
        v = 2.0 * uniform() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    has_spare_ = true;
    return u * f;
}

double Rng::gamma(double shape, double scale) {
    if (!(shape > 0.0) || !(scale > 0.0))
        throw std::domain_error("Rng::gamma requires positive shape and scale");
    if (shape < 1.0) {
        // boost to shape+1, then correct with U^(1/shape)
        const double g = gamma(shape + 1.0, scale);
        return g * std::pow(uniform(), 1.0 / shape);
    }
    // Marsaglia-Tsang squeeze
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = uniform();
        if (u < 1.0 - 0.0331 * x * x * x * x) return d * v * scale;
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v * scale;
    }
}

double Rng::chi_square(double df) {
    return gamma(0.5 * df, 2.0);
}

Observation sample_observation(const ParameterPoint& point, const Problem& problem, Rng& rng) {
    point.validate();
    problem.validate();
    if (static_cast<int>(point.theta.size()) != problem.p)
        throw std::invalid_argument("sample_observation: theta dimension does not match problem.p");
    const double sigma = 1.0 / std::sqrt(point.eta);
    std::vector<double> x(point.theta.size());
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = point.theta[i] + sigma * rng.normal();
    const double s = sigma * sigma * rng.chi_square(problem.n);
    return Observation(std::move(x), s);
}

double loss(const std::vector<double>& d, const ParameterPoint& point) {
    point.validate();
    if (d.size() != point.theta.size())
        throw std::invalid_argument("loss: dimension mismatch");
    double norm_sq = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) {
        const double diff = d[i] - point.theta[i];
        norm_sq += diff * diff;
    }
    return point.eta * norm_sq;
}

EstimatorFn identity_estimator() {
    return [](const Observation& obs) { return obs.x; };
}

RiskEstimate mc_risk_fn(const EstimatorFn& fn, const Problem& problem, const ParameterPoint& point,
                        std::uint64_t reps, std::uint64_t seed) {
    if (reps < 100) throw std::domain_error("mc_risk requires reps >= 100");
    Rng rng(seed);
    // Welford in replicate order; parallel layouts must reproduce this.
    double mean = 0.0;
    double m2 = 0.0;
    for (std::uint64_t k = 0; k < reps; ++k) {
        const Observation obs = sample_observation(point, problem, rng);
        const double l = loss(fn(obs), point);
        const double delta = l - mean;
        mean += delta / static_cast<double>(k + 1);
        m2 += delta * (l - mean);
    }
    RiskEstimate est;
    est.mean = mean;
    est.std_error = std::sqrt(m2 / static_cast<double>(reps - 1) / static_cast<double>(reps));
    est.reps = reps;
    est.seed = seed;
    return est;
}

RiskEstimate mc_risk(const EstimatorSpec& spec, const ParameterPoint& point, std::uint64_t reps,
                     std::uint64_t seed) {
    spec.validate();
    auto fn = [&spec](const Observation& obs) { return estimator::estimate(obs, spec); };
    return mc_risk_fn(fn, spec.problem, point, reps, seed);
}

std::vector<RiskRow> risk_curve_fn(const EstimatorFn& fn, const Problem& problem,
                                   const std::vector<double>& theta_norm_grid, double eta,
                                   std::uint64_t reps, std::uint64_t seed) {
    if (theta_norm_grid.empty()) throw std::invalid_argument("risk_curve requires a nonempty grid");
    std::vector<RiskRow> rows;
    rows.reserve(theta_norm_grid.size());
    for (std::size_t row = 0; row < theta_norm_grid.size(); ++row) {
        ParameterPoint point;
        point.theta.assign(static_cast<std::size_t>(problem.p), 0.0);
        point.theta[0] = theta_norm_grid[row];
        point.eta = eta;
        const std::uint64_t row_seed = derive_stream_seed(seed, row);
        rows.push_back({theta_norm_grid[row], mc_risk_fn(fn, problem, point, reps, row_seed)});
    }
    return rows;
}

std::vector<RiskRow> risk_curve(const EstimatorSpec& spec, const std::vector<double>& theta_norm_grid,
                                double eta, std::uint64_t reps, std::uint64_t seed) {
    spec.validate();
    auto fn = [&spec](const Observation& obs) { return estimator::estimate(obs, spec); };
    return risk_curve_fn(fn, spec.problem, theta_norm_grid, eta, reps, seed);
}

}  // namespace gbshrink::risk
