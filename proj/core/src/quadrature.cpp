#include "bergman/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace bergman {

namespace {

// Legendre P_n(x) and its derivative by the three-term recurrence.
std::pair<double, double> legendre_pd(int n, double x) {
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
        const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    const double d = n * (x * p1 - p0) / (x * x - 1.0);
    return {p1, d};
}

GaussRule build_rule(int n) {
    if (n < 2) throw std::invalid_argument("gauss_legendre: order must be >= 2");
    GaussRule rule;
    rule.nodes.resize(static_cast<size_t>(n));
    rule.weights.resize(static_cast<size_t>(n));
    for (int i = 0; i < (n + 1) / 2; ++i) {
        // Tricomi-style initial guess, then Newton.
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        for (int it = 0; it < 100; ++it) {
            auto [p, d] = legendre_pd(n, x);
            const double dx = p / d;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        auto [p, d] = legendre_pd(n, x);
        (void)p;
        const double w = 2.0 / ((1.0 - x * x) * d * d);
        rule.nodes[static_cast<size_t>(i)] = -x;
        rule.weights[static_cast<size_t>(i)] = w;
        rule.nodes[static_cast<size_t>(n - 1 - i)] = x;
        rule.weights[static_cast<size_t>(n - 1 - i)] = w;
    }
    if (n % 2 == 1) rule.nodes[static_cast<size_t>(n / 2)] = 0.0;
    return rule;
}

}  // namespace

const GaussRule& gauss_legendre(int n) {
    static std::mutex mutex;
    static std::map<int, GaussRule> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, build_rule(n)).first;
    return it->second;
}

}  // namespace bergman
