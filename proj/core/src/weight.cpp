#include "bergman/weight.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "bergman/rng.hpp"

namespace bergman {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}
}  // namespace

WeightSpec::WeightSpec(Family family, double a, double b, double c)
    : family_(family), a_(a), b_(b), c_(c) {
    if (a < 0.0 || b < 0.0 || c < 0.0)
        throw std::invalid_argument("WeightSpec: parameters a, b, c must be non-negative");
    if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c))
        throw std::invalid_argument("WeightSpec: parameters must be finite");
    // All four families satisfy the midpoint condition with delta = 1:
    // AM-GM handles x^a, convexity of x^{-c} handles the exponential part.
    delta_claimed_ = 1.0;
}

WeightSpec WeightSpec::constant_one() { return WeightSpec(Family::ConstantOne, 0.0, 0.0, 0.0); }

WeightSpec WeightSpec::power(double a) { return WeightSpec(Family::Power, a, 0.0, 0.0); }

WeightSpec WeightSpec::exponential(double b, double c) {
    return WeightSpec(Family::Exponential, 0.0, b, c);
}

WeightSpec WeightSpec::power_exponential(double a, double b, double c) {
    return WeightSpec(Family::PowerExponential, a, b, c);
}

double WeightSpec::log_f(double x) const {
    if (x < 0.0) throw std::invalid_argument("WeightSpec::log_f: negative argument");
    double v = 0.0;
    if (a_ > 0.0) {
        if (x == 0.0) return kNegInf;
        v += a_ * std::log(x);
    }
    if (b_ > 0.0) {
        if (c_ > 0.0) {
            if (x == 0.0) return kNegInf;
            v -= b_ * std::pow(x, -c_);
        } else {
            v -= b_;  // c = 0: constant damping exp(-b)
        }
    }
    return v;
}

double WeightSpec::f(double x) const { return std::exp(log_f(x)); }

double WeightSpec::log_weight(const RadialDomain& domain, std::span<const double> r) const {
    const double rho = domain.rho(r);
    if (rho >= 0.0)
        throw std::invalid_argument("weight: point is outside the domain (rho = " +
                                    std::to_string(rho) + ")");
    return log_f(-rho);
}

double WeightSpec::weight(const RadialDomain& domain, std::span<const double> r) const {
    return std::exp(log_weight(domain, r));
}

std::string WeightSpec::descriptor() const {
    switch (family_) {
        case Family::ConstantOne:
            return "constant-one";
        case Family::Power:
            return "power " + format_double(a_);
        case Family::Exponential:
            return "exponential " + format_double(b_) + " " + format_double(c_);
        case Family::PowerExponential:
            return "power-exponential " + format_double(a_) + " " + format_double(b_) + " " +
                   format_double(c_);
    }
    throw std::logic_error("unreachable");
}

WeightSpec WeightSpec::from_descriptor(std::span<const std::string> tokens) {
    auto fail = [&](const std::string& why) -> WeightSpec {
        std::string joined;
        for (const auto& t : tokens) joined += t + " ";
        throw std::invalid_argument("bad weight record '" + joined + "': " + why);
    };
    if (tokens.empty()) return fail("empty");
    const std::string& fam = tokens[0];
    auto num = [&](size_t i) { return std::stod(tokens[i]); };
    if (fam == "constant-one") {
        if (tokens.size() != 1) return fail("constant-one takes no parameters");
        return constant_one();
    }
    if (fam == "power") {
        if (tokens.size() != 2) return fail("expected 'power <a>'");
        return power(num(1));
    }
    if (fam == "exponential") {
        if (tokens.size() != 3) return fail("expected 'exponential <b> <c>'");
        return exponential(num(1), num(2));
    }
    if (fam == "power-exponential") {
        if (tokens.size() != 4) return fail("expected 'power-exponential <a> <b> <c>'");
        return power_exponential(num(1), num(2), num(3));
    }
    return fail("unknown family '" + fam + "'");
}

double estimate_delta(const WeightSpec& weight, double x_max, int grid) {
    if (!(x_max > 0.0)) throw std::invalid_argument("estimate_delta: x_max must be positive");
    if (grid < 2) throw std::invalid_argument("estimate_delta: grid must be >= 2");
    // Lattice over (0, x_max]^2; log f is cached per axis point. The minimum
    // includes the diagonal x = y where the ratio is exactly 1, so the result
    // never exceeds 1.
    std::vector<double> pts(static_cast<size_t>(grid)), logf(static_cast<size_t>(grid));
    for (int i = 0; i < grid; ++i) {
        pts[static_cast<size_t>(i)] = x_max * (i + 1) / static_cast<double>(grid);
        logf[static_cast<size_t>(i)] = weight.log_f(pts[static_cast<size_t>(i)]);
    }
    double min_log = std::numeric_limits<double>::infinity();
    for (int i = 0; i < grid; ++i) {
        for (int j = i; j < grid; ++j) {
            const double mid = 0.5 * (pts[static_cast<size_t>(i)] + pts[static_cast<size_t>(j)]);
            const double lr = 2.0 * weight.log_f(mid) - logf[static_cast<size_t>(i)] -
                              logf[static_cast<size_t>(j)];
            min_log = std::min(min_log, lr);
        }
    }
    return std::exp(min_log);
}

WeightMidpointReport check_weight_midpoint(const WeightSpec& weight, const RadialDomain& domain,
                                           long sample_count, uint64_t seed, double tol) {
    if (sample_count < 1) throw std::invalid_argument("check_weight_midpoint: sample_count >= 1");
    const int n = domain.dim();
    const auto& hi = domain.radial_box();
    Rng rng(seed);

    WeightMidpointReport report;
    report.threshold = weight.delta_claimed().value_or(0.0);
    double min_log = std::numeric_limits<double>::infinity();

    std::vector<double> x(static_cast<size_t>(n)), y(static_cast<size_t>(n)),
        mid(static_cast<size_t>(n));
    auto draw_inside = [&](std::vector<double>& p) {
        for (long attempts = 0; attempts < 100000; ++attempts) {
            for (int i = 0; i < n; ++i)
                p[static_cast<size_t>(i)] = rng.uniform(0.0, hi[static_cast<size_t>(i)]);
            if (domain.contains(p)) return;
        }
        throw std::runtime_error("check_weight_midpoint: rejection sampling failed");
    };

    for (long s = 0; s < sample_count; ++s) {
        draw_inside(x);
        draw_inside(y);
        for (int i = 0; i < n; ++i)
            mid[static_cast<size_t>(i)] = 0.5 * (x[static_cast<size_t>(i)] + y[static_cast<size_t>(i)]);
        // Midpoint stays interior by convexity of the radial image.
        const double lr = 2.0 * weight.log_weight(domain, mid) - weight.log_weight(domain, x) -
                          weight.log_weight(domain, y);
        ++report.samples;
        if (lr < min_log) {
            min_log = lr;
            report.witness_x = x;
            report.witness_y = y;
        }
    }
    report.min_ratio = std::exp(min_log);
    report.pass = report.min_ratio >= report.threshold - tol;
    return report;
}

}  // namespace bergman
