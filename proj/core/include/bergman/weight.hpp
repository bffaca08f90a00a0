#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bergman/geometry.hpp"

namespace bergman {

/// Weight lambda(z) = f(-rho(z)) with f(x) = x^a * exp(-b / x^c). All
/// evaluation happens in the log domain and is exponentiated only at the API
/// boundary; near the boundary of the domain f underflows otherwise.
class WeightSpec {
public:
    enum class Family { ConstantOne, Power, Exponential, PowerExponential };

    static WeightSpec constant_one();
    static WeightSpec power(double a);
    static WeightSpec exponential(double b, double c);
    static WeightSpec power_exponential(double a, double b, double c);

    Family family() const { return family_; }
    double a() const { return a_; }
    double b() const { return b_; }
    double c() const { return c_; }

    /// The delta of the midpoint convexity condition on f, when known
    /// analytically. Every built-in family satisfies it with delta = 1.
    std::optional<double> delta_claimed() const { return delta_claimed_; }

    /// log f(x) for x >= 0; -inf encodes the limit value f(0+) = 0.
    double log_f(double x) const;
    double f(double x) const;

    /// log lambda(r) = log f(-rho(r)); the point must lie inside the domain.
    double log_weight(const RadialDomain& domain, std::span<const double> r) const;
    double weight(const RadialDomain& domain, std::span<const double> r) const;

    /// Canonical record, e.g. "power 2" or "exponential 1 1".
    std::string descriptor() const;
    static WeightSpec from_descriptor(std::span<const std::string> tokens);

    bool operator==(const WeightSpec& o) const {
        return family_ == o.family_ && a_ == o.a_ && b_ == o.b_ && c_ == o.c_;
    }

private:
    WeightSpec(Family family, double a, double b, double c);

    Family family_;
    double a_, b_, c_;
    std::optional<double> delta_claimed_;
};

/// Minimum of (f((x+y)/2))^2 / (f(x) f(y)) over a grid x grid lattice in
/// (0, x_max]^2, computed in the log domain. A positive result bounds the
/// convexity constant delta of f from below on that range.
double estimate_delta(const WeightSpec& weight, double x_max, int grid);

/// Result of sampling the weight midpoint-convexity ratio over the radial image.
struct WeightMidpointReport {
    double min_ratio = 0.0;
    std::vector<double> witness_x;
    std::vector<double> witness_y;
    long samples = 0;
    double threshold = 0.0;
    bool pass = false;
};

/// Samples pairs from the radial image and reports the minimum of
/// (lambda((x+y)/2))^2 / (lambda(x) lambda(y)); passes when the minimum stays
/// above the claimed delta minus tol.
WeightMidpointReport check_weight_midpoint(const WeightSpec& weight, const RadialDomain& domain,
                                           long sample_count, uint64_t seed, double tol = 1e-9);

}  // namespace bergman
