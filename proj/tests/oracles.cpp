#include "oracles.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace oracles {

namespace {

constexpr int kGlOrder = 32;

struct GlRule {
    std::array<double, kGlOrder> node{};
    std::array<double, kGlOrder> weight{};
};

/// Legendre nodes by Newton iteration from the Chebyshev initial guess.
GlRule make_gl_rule() {
    GlRule rule;
    const int n = kGlOrder;
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.node[i] = -x;
        rule.node[n - 1 - i] = x;
        rule.weight[i] = 2.0 / ((1.0 - x * x) * pp * pp);
        rule.weight[n - 1 - i] = rule.weight[i];
    }
    return rule;
}

const GlRule& gl_rule() {
    static const GlRule rule = make_gl_rule();
    return rule;
}

double gl_panel(const Fn& f, double a, double b) {
    const GlRule& rule = gl_rule();
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double sum = 0.0;
    for (int i = 0; i < kGlOrder; ++i) {
        sum += rule.weight[i] * f(mid + half * rule.node[i]);
    }
    return half * sum;
}

double composite(const Fn& f, double a, double b, double tol, int max_rounds, int init_panels) {
    double prev = std::numeric_limits<double>::quiet_NaN();
    int panels = init_panels;
    for (int round = 0; round < max_rounds; ++round, panels *= 2) {
        double sum = 0.0;
        const double h = (b - a) / panels;
        for (int k = 0; k < panels; ++k) sum += gl_panel(f, a + k * h, a + (k + 1) * h);
        if (std::isfinite(prev) &&
            std::abs(sum - prev) <= tol * std::max(std::abs(sum), 1e-300))
            return sum;
        prev = sum;
    }
    return prev;
}

}  // namespace

double log_gamma(double x) {
    if (!(x > 0.0)) throw std::domain_error("oracle log_gamma requires x > 0");
    // shift into the Stirling regime
    double shift = 0.0;
    while (x < 16.0) {
        shift -= std::log(x);
        x += 1.0;
    }
    static const double coef[] = {1.0 / 12.0,    -1.0 / 360.0,      1.0 / 1260.0, -1.0 / 1680.0,
                                  1.0 / 1188.0,  -691.0 / 360360.0, 1.0 / 156.0};
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    double series = 0.0;
    double power = inv;
    for (double c : coef) {
        series += c * power;
        power *= inv2;
    }
    return shift + (x - 0.5) * std::log(x) - x + 0.5 * std::log(2.0 * M_PI) + series;
}

double integrate(const Fn& f, double a, double b, double tol, int max_rounds) {
    return composite(f, a, b, tol, max_rounds, 1);
}

double integrate_to_inf(const Fn& f, double a, double scale, double tol, int max_rounds) {
    auto mapped = [&](double u) {
        const double om = 1.0 - u;
        const double v = a + scale * u / om;
        if (!std::isfinite(v)) return 0.0;
        const double fv = f(v);
        return std::isfinite(fv) ? fv * scale / (om * om) : 0.0;
    };
    return composite(mapped, 0.0, 1.0, tol, max_rounds, 4);
}

double integrate_unit_weighted(const Fn& f, double alpha, double beta, double tol) {
    if (!(alpha > -1.0) || !(beta > -1.0))
        throw std::domain_error("oracle integrate_unit_weighted requires alpha, beta > -1");
    // left half with the u^alpha weight removed by u = v^(1/(alpha+1))
    const double qa = 1.0 / (alpha + 1.0);
    auto left = [&](double v) {
        const double u = std::min(std::pow(v, qa), 0.5);
        return std::pow(1.0 - u, beta) * f(u);
    };
    const double left_val = qa * composite(left, 0.0, std::pow(0.5, alpha + 1.0), tol, 10, 4);
    // right half with the (1-u)^beta weight
    const double qb = 1.0 / (beta + 1.0);
    auto right = [&](double v) {
        const double mu = std::min(std::pow(v, qb), 0.5);
        return std::pow(1.0 - mu, alpha) * f(1.0 - mu);
    };
    const double right_val = qb * composite(right, 0.0, std::pow(0.5, beta + 1.0), tol, 10, 4);
    return left_val + right_val;
}

namespace {

/// int_0^1 lambda^alpha (1-lambda)^beta g(lambda) dlambda where g carries a
/// boundary layer of width ~1/(1+w) near 0 (visible from the joint density).
/// Panels follow a geometric ladder across the layer; the endpoint panels
/// remove their weight by the power substitutions.
double integrate_lambda_layered(const Fn& g, double alpha, double beta, double w, double tol) {
    const double layer = 1.0 / (1.0 + w);
    std::vector<double> cuts;
    cuts.push_back(0.0);
    for (double c = std::min(layer, 0.25); c < 0.5; c *= 4.0) cuts.push_back(c);
    cuts.push_back(0.5);
    cuts.push_back(1.0);

    double total = 0.0;
    // first panel [0, c1]: v = lambda^(alpha+1)
    {
        const double hi = cuts[1];
        const double qa = 1.0 / (alpha + 1.0);
        auto f = [&](double v) {
            const double lam = std::min(std::pow(v, qa), hi);
            return std::pow(1.0 - lam, beta) * g(lam);
        };
        total += qa * composite(f, 0.0, std::pow(hi, alpha + 1.0), tol, 10, 4);
    }
    // interior panels: plain weighted integrand
    for (std::size_t k = 1; k + 2 < cuts.size(); ++k) {
        auto f = [&](double lam) {
            return std::pow(lam, alpha) * std::pow(1.0 - lam, beta) * g(lam);
        };
        total += composite(f, cuts[k], cuts[k + 1], tol, 10, 4);
    }
    // last panel [1/2, 1]: v = (1-lambda)^(beta+1)
    {
        const double qb = 1.0 / (beta + 1.0);
        auto f = [&](double v) {
            const double mu = std::min(std::pow(v, qb), 0.5);
            return std::pow(1.0 - mu, alpha) * g(1.0 - mu);
        };
        total += qb * composite(f, 0.0, std::pow(0.5, beta + 1.0), tol, 10, 4);
    }
    return total;
}

}  // namespace

double shrink_fraction_2d(double w, int p, int n, double a, double b, double tol) {
    const double m_exp = 0.5 * (p + n);

    // the inner eta integral is shared between the numerator and the
    // denominator; the composite rules revisit identical lambda nodes
    auto cache = std::make_shared<std::unordered_map<std::uint64_t, double>>();
    auto inner = [=](double lam) {
        const std::uint64_t key = std::bit_cast<std::uint64_t>(lam);
        const auto it = cache->find(key);
        if (it != cache->end()) return it->second;
        const double eta_scale = 2.0 * (m_exp + 1.0) / (lam * w + 1.0);
        auto g = [&](double eta) {
            return std::exp(m_exp * std::log(eta) - 0.5 * eta * (lam * w + 1.0));
        };
        const double val = integrate_to_inf(g, 0.0, eta_scale, tol * 0.1, 8);
        cache->emplace(key, val);
        return val;
    };

    auto num_f = [&](double lam) { return lam * inner(lam); };
    const double numerator = integrate_lambda_layered(num_f, 0.5 * p + a, b, w, tol);
    const double denominator = integrate_lambda_layered(inner, 0.5 * p + a, b, w, tol);
    return numerator / denominator;
}

}  // namespace oracles
