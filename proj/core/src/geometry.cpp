#include "bergman/geometry.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "bergman/rng.hpp"

namespace bergman {

namespace {

void require_dim(const RadialDomain& d, std::span<const double> r) {
    if (static_cast<int>(r.size()) != d.dim())
        throw std::invalid_argument("RadialDomain: point dimension " + std::to_string(r.size()) +
                                    " does not match domain dimension " + std::to_string(d.dim()));
    for (double v : r) {
        if (v < 0.0) throw std::invalid_argument("RadialDomain: point has a negative coordinate");
    }
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

RadialDomain RadialDomain::disc(double radius) { return ball(1, radius); }

RadialDomain RadialDomain::ball(int dim, double radius) {
    if (dim < 1) throw std::invalid_argument("ball: dimension must be >= 1");
    if (!(radius > 0.0)) throw std::invalid_argument("ball: radius must be positive");
    RadialDomain d;
    d.family_ = Family::Ball;
    d.dim_ = dim;
    d.name_ = dim == 1 ? "disc" : "ball";
    d.axes_.assign(static_cast<size_t>(dim), radius);
    d.exponents_.assign(static_cast<size_t>(dim), 1);
    d.box_hi_ = d.axes_;
    return d;
}

RadialDomain RadialDomain::polydisc(std::vector<double> radii) {
    if (radii.empty()) throw std::invalid_argument("polydisc: need at least one radius");
    for (double r : radii) {
        if (!(r > 0.0)) throw std::invalid_argument("polydisc: radii must be positive");
    }
    RadialDomain d;
    d.family_ = Family::Polydisc;
    d.dim_ = static_cast<int>(radii.size());
    d.name_ = "polydisc";
    d.radii_ = std::move(radii);
    d.box_hi_ = d.radii_;
    return d;
}

RadialDomain RadialDomain::ellipsoid(std::vector<int> exponents, std::vector<double> axes) {
    if (exponents.empty()) throw std::invalid_argument("ellipsoid: need at least one exponent");
    for (int p : exponents) {
        if (p < 1) throw std::invalid_argument("ellipsoid: exponents must be >= 1");
    }
    if (axes.empty()) axes.assign(exponents.size(), 1.0);
    if (axes.size() != exponents.size())
        throw std::invalid_argument("ellipsoid: axes/exponents length mismatch");
    for (double a : axes) {
        if (!(a > 0.0)) throw std::invalid_argument("ellipsoid: semi-axes must be positive");
    }
    RadialDomain d;
    d.family_ = Family::Ellipsoid;
    d.dim_ = static_cast<int>(exponents.size());
    d.name_ = "ellipsoid";
    d.exponents_ = std::move(exponents);
    d.axes_ = std::move(axes);
    d.box_hi_ = d.axes_;
    return d;
}

RadialDomain RadialDomain::custom(std::string name, int dim,
                                  std::function<double(std::span<const double>)> rho,
                                  std::vector<double> box_hi) {
    if (dim < 1) throw std::invalid_argument("custom: dimension must be >= 1");
    if (static_cast<int>(box_hi.size()) != dim)
        throw std::invalid_argument("custom: bounding box dimension mismatch");
    for (double v : box_hi) {
        if (!(v > 0.0) || !std::isfinite(v))
            throw std::invalid_argument("custom: bounding box must be finite and positive");
    }
    RadialDomain d;
    d.family_ = Family::Custom;
    d.dim_ = dim;
    d.name_ = std::move(name);
    d.rho_ = std::move(rho);
    d.box_hi_ = std::move(box_hi);
    return d;
}

double RadialDomain::rho(std::span<const double> r) const {
    require_dim(*this, r);
    switch (family_) {
        case Family::Ball:
        case Family::Ellipsoid: {
            double s = 0.0;
            for (int i = 0; i < dim_; ++i) {
                const double t = r[static_cast<size_t>(i)] / axes_[static_cast<size_t>(i)];
                s += std::pow(t * t, exponents_[static_cast<size_t>(i)]);
            }
            return s - 1.0;
        }
        case Family::Polydisc: {
            double m = -std::numeric_limits<double>::infinity();
            for (int i = 0; i < dim_; ++i) {
                const double t = r[static_cast<size_t>(i)] / radii_[static_cast<size_t>(i)];
                m = std::max(m, t * t - 1.0);
            }
            return m;
        }
        case Family::Custom:
            if (!rho_) throw std::logic_error("custom domain '" + name_ + "' has no evaluator");
            return rho_(r);
    }
    throw std::logic_error("unreachable");
}

bool RadialDomain::contains(std::span<const double> r) const { return rho(r) < 0.0; }

bool RadialDomain::has_evaluator() const { return family_ != Family::Custom || bool(rho_); }

double RadialDomain::section_limit(std::span<const double> prefix, int coord) const {
    if (coord < 0 || coord >= dim_ || static_cast<int>(prefix.size()) != coord)
        throw std::invalid_argument("section_limit: bad prefix length");
    switch (family_) {
        case Family::Ball:
        case Family::Ellipsoid: {
            double s = 0.0;
            for (int i = 0; i < coord; ++i) {
                const double t = prefix[static_cast<size_t>(i)] / axes_[static_cast<size_t>(i)];
                s += std::pow(t * t, exponents_[static_cast<size_t>(i)]);
            }
            if (s >= 1.0) return 0.0;
            const int p = exponents_[static_cast<size_t>(coord)];
            return axes_[static_cast<size_t>(coord)] * std::pow(1.0 - s, 1.0 / (2.0 * p));
        }
        case Family::Polydisc:
            return radii_[static_cast<size_t>(coord)];
        case Family::Custom:
            return box_hi_[static_cast<size_t>(coord)];
    }
    throw std::logic_error("unreachable");
}

std::string RadialDomain::descriptor() const {
    switch (family_) {
        case Family::Ball: {
            std::string s = dim_ == 1 ? "disc" : ("ball " + std::to_string(dim_));
            if (axes_[0] != 1.0) s += " " + format_double(axes_[0]);
            return s;
        }
        case Family::Polydisc: {
            std::string s = "polydisc";
            for (double r : radii_) s += " " + format_double(r);
            return s;
        }
        case Family::Ellipsoid: {
            std::string s = "ellipsoid " + std::to_string(dim_);
            for (int p : exponents_) s += " " + std::to_string(p);
            bool unit_axes = true;
            for (double a : axes_) unit_axes = unit_axes && a == 1.0;
            if (!unit_axes) {
                for (double a : axes_) s += " " + format_double(a);
            }
            return s;
        }
        case Family::Custom: {
            std::string s = "custom " + name_ + " " + std::to_string(dim_);
            for (double v : box_hi_) s += " " + format_double(v);
            return s;
        }
    }
    throw std::logic_error("unreachable");
}

RadialDomain RadialDomain::from_descriptor(std::span<const std::string> tokens) {
    auto fail = [&](const std::string& why) -> RadialDomain {
        std::string joined;
        for (const auto& t : tokens) joined += t + " ";
        throw std::invalid_argument("bad domain record '" + joined + "': " + why);
    };
    if (tokens.empty()) return fail("empty");
    const std::string& fam = tokens[0];
    auto num = [&](size_t i) { return std::stod(tokens[i]); };
    auto integer = [&](size_t i) { return std::stoi(tokens[i]); };
    if (fam == "disc") {
        if (tokens.size() == 1) return disc();
        if (tokens.size() == 2) return disc(num(1));
        return fail("expected 'disc [radius]'");
    }
    if (fam == "ball") {
        if (tokens.size() == 2) return ball(integer(1));
        if (tokens.size() == 3) return ball(integer(1), num(2));
        return fail("expected 'ball <dim> [radius]'");
    }
    if (fam == "polydisc") {
        if (tokens.size() < 2) return fail("expected 'polydisc <r1> ... <rn>'");
        std::vector<double> radii;
        for (size_t i = 1; i < tokens.size(); ++i) radii.push_back(num(i));
        return polydisc(std::move(radii));
    }
    if (fam == "ellipsoid") {
        if (tokens.size() < 2) return fail("expected 'ellipsoid <dim> <p...> [axes...]'");
        const int n = integer(1);
        if (n < 1) return fail("dimension must be positive");
        const size_t want_p = 2 + static_cast<size_t>(n);
        if (tokens.size() != want_p && tokens.size() != want_p + static_cast<size_t>(n))
            return fail("expected dim exponents and optionally dim axes");
        std::vector<int> exps;
        for (int i = 0; i < n; ++i) exps.push_back(integer(2 + static_cast<size_t>(i)));
        std::vector<double> axes;
        if (tokens.size() == want_p + static_cast<size_t>(n)) {
            for (int i = 0; i < n; ++i) axes.push_back(num(want_p + static_cast<size_t>(i)));
        }
        return ellipsoid(std::move(exps), std::move(axes));
    }
    if (fam == "custom") {
        if (tokens.size() < 3) return fail("expected 'custom <name> <dim> <box...>'");
        const int n = integer(2);
        if (tokens.size() != 3 + static_cast<size_t>(n)) return fail("bounding box length mismatch");
        std::vector<double> hi;
        for (int i = 0; i < n; ++i) hi.push_back(num(3 + static_cast<size_t>(i)));
        return custom(tokens[1], n, nullptr, std::move(hi));
    }
    return fail("unknown family '" + fam + "'");
}

ConvexityReport check_midpoint_convexity(const RadialDomain& domain, long sample_count,
                                         uint64_t seed, double tol, int grid_resolution) {
    if (sample_count < 1) throw std::invalid_argument("check_midpoint_convexity: sample_count >= 1");
    const int n = domain.dim();
    const auto& hi = domain.radial_box();

    ConvexityReport report;
    report.tolerance = tol;
    std::vector<double> x(static_cast<size_t>(n)), y(static_cast<size_t>(n)),
        mid(static_cast<size_t>(n));

    auto probe = [&](const std::vector<double>& a, const std::vector<double>& b) {
        for (size_t i = 0; i < a.size(); ++i) mid[i] = 0.5 * (a[i] + b[i]);
        const double excess = domain.rho(mid) - 0.5 * (domain.rho(a) + domain.rho(b));
        ++report.samples;
        if (report.witness_x.empty() || excess > report.max_excess) {
            report.max_excess = excess;
            report.witness_x = a;
            report.witness_y = b;
        }
    };

    Rng rng(seed);
    for (long s = 0; s < sample_count; ++s) {
        for (int i = 0; i < n; ++i) {
            x[static_cast<size_t>(i)] = rng.uniform(0.0, hi[static_cast<size_t>(i)]);
            y[static_cast<size_t>(i)] = rng.uniform(0.0, hi[static_cast<size_t>(i)]);
        }
        probe(x, y);
    }

    // Deterministic scan over grid pairs, capped so higher dimensions stay
    // tractable (pairs are strided rather than exhaustive past the cap).
    if (grid_resolution >= 2) {
        const double g = grid_resolution;
        long points = 1;
        for (int i = 0; i < n; ++i) points *= grid_resolution;
        const long max_pairs = 1L << 23;
        const long stride = std::max(1L, points * points / max_pairs);
        std::vector<double> a(static_cast<size_t>(n)), b(static_cast<size_t>(n));
        auto decode = [&](long idx, std::vector<double>& p) {
            for (int i = 0; i < n; ++i) {
                const long c = idx % grid_resolution;
                idx /= grid_resolution;
                p[static_cast<size_t>(i)] =
                    hi[static_cast<size_t>(i)] * (static_cast<double>(c) / (g - 1.0));
            }
        };
        for (long pair = 0; pair < points * points; pair += stride) {
            decode(pair % points, a);
            decode(pair / points, b);
            probe(a, b);
        }
    }

    report.pass = report.max_excess <= tol;
    return report;
}

}  // namespace bergman
