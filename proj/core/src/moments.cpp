#include "bergman/moments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include "bergman/errors.hpp"
#include "bergman/gamma.hpp"
#include "bergman/parallel.hpp"
#include "bergman/quadrature.hpp"

namespace bergman {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kLogPi = 1.1447298858494001741;  // log(pi)

/// lambda(r) in the linear domain; clamps rho rounding at the boundary to the
/// limit value f(0+).
double lambda_linear(const WeightSpec& weight, const RadialDomain& domain,
                     std::span<const double> r) {
    const double x = -domain.rho(r);
    return std::exp(weight.log_f(std::max(x, 0.0)));
}

/// Nested adaptive integration of prod_i r_i^(2 gamma_i + 1) lambda(r) over
/// the radial image. Each level integrates one coordinate with the section
/// limit from rho = 0 for the coordinates already fixed.
class NestedMomentIntegral {
public:
    NestedMomentIntegral(const RadialDomain& domain, const WeightSpec& weight,
                         std::span<const int> gamma, double tol)
        : domain_(domain),
          weight_(weight),
          gamma_(gamma),
          point_(gamma.size(), 0.0),
          level_tol_(tol / (2.0 * static_cast<double>(gamma.size()))) {}

    double run() { return level(0); }

private:
    double level(int k) {
        const int n = static_cast<int>(gamma_.size());
        const double hi =
            domain_.section_limit(std::span<const double>(point_.data(), static_cast<size_t>(k)), k);
        if (!(hi > 0.0)) return 0.0;
        const double power = 2.0 * gamma_[static_cast<size_t>(k)] + 1.0;
        auto integrand = [&](double r) {
            point_[static_cast<size_t>(k)] = r;
            const double base = (k + 1 == n) ? lambda_linear(weight_, domain_, point_) : level(k + 1);
            return std::pow(r, power) * base;
        };
        const QuadratureResult res = integrate_adaptive(integrand, 0.0, hi, level_tol_);
        if (!res.converged)
            throw QuadratureError("moment quadrature did not converge at level " +
                                      std::to_string(k) + " (error estimate " +
                                      std::to_string(res.error) + ")",
                                  res.error);
        return res.value;
    }

    const RadialDomain& domain_;
    const WeightSpec& weight_;
    std::span<const int> gamma_;
    std::vector<double> point_;
    double level_tol_;
};

/// Disc with an exponential weight factor: substitute x = -rho(r), which
/// turns the radial integral into (R^(2m+2)/2) \int_0^1 (1-x)^m f(x) dx and
/// moves the quadrature nodes onto the argument of f directly.
double disc_substitution_integral(const RadialDomain& domain, const WeightSpec& weight, int m,
                                  double tol) {
    const double radius = domain.axes()[0];
    auto integrand = [&](double x) {
        return std::exp(m * std::log1p(-x) + weight.log_f(x));
    };
    const QuadratureResult res = integrate_adaptive(integrand, 0.0, 1.0, 0.5 * tol);
    if (!res.converged)
        throw QuadratureError("disc substitution quadrature did not converge (error estimate " +
                                  std::to_string(res.error) + ")",
                              res.error);
    return 0.5 * std::pow(radius, 2.0 * m + 2.0) * res.value;
}

/// Indicator quadrature over the bounding box with Richardson refinement for
/// black-box domains. Midpoint rule at resolutions N, 2N, ...; the boundary
/// cells dominate the error at O(1/N), which the extrapolation removes. The
/// error estimate is heuristic.
double indicator_richardson_integral(const RadialDomain& domain, const WeightSpec& weight,
                                     std::span<const int> gamma, double tol) {
    const int n = domain.dim();
    const auto& hi = domain.radial_box();
    const long max_cells = n == 1 ? (1L << 16) : (1L << 22);

    auto composite = [&](int res_per_axis) {
        long cells = 1;
        for (int i = 0; i < n; ++i) cells *= res_per_axis;
        std::vector<double> r(static_cast<size_t>(n));
        double cell_volume = 1.0;
        for (int i = 0; i < n; ++i) cell_volume *= hi[static_cast<size_t>(i)] / res_per_axis;
        double sum = 0.0;
        for (long c = 0; c < cells; ++c) {
            long rem = c;
            for (int i = 0; i < n; ++i) {
                const long idx = rem % res_per_axis;
                rem /= res_per_axis;
                r[static_cast<size_t>(i)] =
                    hi[static_cast<size_t>(i)] * (idx + 0.5) / res_per_axis;
            }
            if (domain.rho(r) >= 0.0) continue;
            double v = lambda_linear(weight, domain, r);
            for (int i = 0; i < n; ++i)
                v *= std::pow(r[static_cast<size_t>(i)], 2.0 * gamma[static_cast<size_t>(i)] + 1.0);
            sum += v;
        }
        return sum * cell_volume;
    };

    int res = 32;
    double prev = composite(res);
    double best = prev;
    double best_err = std::numeric_limits<double>::infinity();
    while (true) {
        res *= 2;
        long cells = 1;
        for (int i = 0; i < n; ++i) cells *= res;
        if (cells > max_cells) break;
        const double cur = composite(res);
        best = 2.0 * cur - prev;  // first-order Richardson
        best_err = std::abs(cur - prev);
        prev = cur;
        if (best_err <= tol * std::abs(best)) return best;
    }
    throw QuadratureError("indicator quadrature exhausted its refinement budget (error estimate " +
                              std::to_string(best_err) + ")",
                          best_err);
}

bool is_symmetric_family(const RadialDomain& d) {
    switch (d.family()) {
        case RadialDomain::Family::Ball: {
            return true;  // equal axes and exponents by construction
        }
        case RadialDomain::Family::Polydisc: {
            const auto& r = d.radii();
            return std::all_of(r.begin(), r.end(), [&](double v) { return v == r[0]; });
        }
        case RadialDomain::Family::Ellipsoid: {
            const auto& p = d.exponents();
            const auto& a = d.axes();
            return std::all_of(p.begin(), p.end(), [&](int v) { return v == p[0]; }) &&
                   std::all_of(a.begin(), a.end(), [&](double v) { return v == a[0]; });
        }
        case RadialDomain::Family::Custom:
            return false;
    }
    return false;
}

}  // namespace

std::string provenance_name(Provenance p) {
    switch (p) {
        case Provenance::Quadrature:
            return "quadrature";
        case Provenance::ClosedForm:
            return "closed-form";
        case Provenance::LoadedFromFile:
            return "loaded-from-file";
    }
    throw std::logic_error("unreachable");
}

Provenance provenance_from_name(const std::string& name) {
    if (name == "quadrature") return Provenance::Quadrature;
    if (name == "closed-form") return Provenance::ClosedForm;
    if (name == "loaded-from-file") return Provenance::LoadedFromFile;
    throw FormatError("unknown provenance '" + name + "'");
}

double compute_moment(const RadialDomain& domain, const WeightSpec& weight,
                      const MultiIndex& gamma, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("compute_moment: tol must be positive");
    if (gamma.dim() != domain.dim())
        throw std::invalid_argument("compute_moment: gamma dimension mismatch");
    const int n = domain.dim();

    double radial;
    if (domain.family() == RadialDomain::Family::Custom) {
        radial = indicator_richardson_integral(domain, weight, gamma.data(), tol);
    } else if (n == 1 && domain.family() == RadialDomain::Family::Ball && weight.b() > 0.0) {
        radial = disc_substitution_integral(domain, weight, gamma[0], tol);
    } else {
        radial = NestedMomentIntegral(domain, weight, gamma.data(), tol).run();
    }
    if (!(radial > 0.0) || !std::isfinite(radial))
        throw QuadratureError("moment integral for gamma = (" + gamma.to_string() +
                                  ") is not strictly positive",
                              0.0);
    return n * std::log(kTwoPi) + std::log(radial);
}

double closed_form_moment(const RadialDomain& domain, const WeightSpec& weight,
                          const MultiIndex& gamma) {
    if (gamma.dim() != domain.dim())
        throw std::invalid_argument("closed_form_moment: gamma dimension mismatch");
    if (weight.b() > 0.0)
        throw std::invalid_argument(
            "closed_form_moment: only constant-one and power weights have closed forms");
    const double a = weight.a();
    const int n = domain.dim();

    switch (domain.family()) {
        case RadialDomain::Family::Ball: {
            const double radius = domain.axes()[0];
            double s = n * kLogPi + (2.0 * gamma.total() + 2.0 * n) * std::log(radius);
            for (int i = 0; i < n; ++i) s += log_factorial(gamma[i]);
            s += std::lgamma(a + 1.0);
            s -= std::lgamma(n + gamma.total() + a + 1.0);
            return s;
        }
        case RadialDomain::Family::Polydisc: {
            double s = 0.0;
            for (int i = 0; i < n; ++i) {
                const double radius = domain.radii()[static_cast<size_t>(i)];
                s += kLogPi + (2.0 * gamma[i] + 2.0) * std::log(radius);
                s += log_factorial(gamma[i]) + std::lgamma(a + 1.0) -
                     std::lgamma(gamma[i] + a + 2.0);
            }
            return s;
        }
        case RadialDomain::Family::Ellipsoid:
        case RadialDomain::Family::Custom:
            throw std::invalid_argument("closed_form_moment: unsupported family '" +
                                        domain.name() + "'");
    }
    throw std::logic_error("unreachable");
}

MomentTable::MomentTable(RadialDomain domain, WeightSpec weight, int max_degree, double tol,
                         Provenance provenance, std::vector<double> log_entries)
    : domain_(std::move(domain)),
      weight_(std::move(weight)),
      max_degree_(max_degree),
      tol_(tol),
      provenance_(provenance),
      log_entries_(std::move(log_entries)) {
    entries_.resize(log_entries_.size());
    for (size_t i = 0; i < log_entries_.size(); ++i) entries_[i] = std::exp(log_entries_[i]);
    validate();
}

size_t MomentTable::flat_index(std::span<const int> gamma) const {
    size_t idx = 0;
    for (size_t i = 0; i < gamma.size(); ++i)
        idx = idx * static_cast<size_t>(max_degree_ + 1) + static_cast<size_t>(gamma[i]);
    return idx;
}

bool MomentTable::covers(std::span<const int> gamma) const {
    if (static_cast<int>(gamma.size()) != dim()) return false;
    for (int g : gamma) {
        if (g < 0 || g > max_degree_) return false;
    }
    return true;
}

double MomentTable::log_d2(std::span<const int> gamma) const {
    if (!covers(gamma)) {
        std::string s;
        for (int g : gamma) s += std::to_string(g) + " ";
        throw TableRangeError("moment table (max_degree " + std::to_string(max_degree_) +
                              ") does not cover gamma = " + s);
    }
    return log_entries_[flat_index(gamma)];
}

double MomentTable::d2(std::span<const int> gamma) const {
    if (!covers(gamma)) {
        std::string s;
        for (int g : gamma) s += std::to_string(g) + " ";
        throw TableRangeError("moment table (max_degree " + std::to_string(max_degree_) +
                              ") does not cover gamma = " + s);
    }
    return entries_[flat_index(gamma)];
}

void MomentTable::validate() const {
    const int n = dim();
    const int cap = max_degree_;
    size_t expected = 1;
    for (int i = 0; i < n; ++i) expected *= static_cast<size_t>(cap + 1);
    if (log_entries_.size() != expected)
        throw std::invalid_argument("MomentTable: entry count does not match the degree box");

    for (double v : log_entries_) {
        if (!std::isfinite(v))
            throw std::invalid_argument("MomentTable: non-finite log d^2 entry (moment must be "
                                        "strictly positive)");
    }

    // Directional midpoint log-convexity: 2 L(a+b) <= L(a) + L(a+2b) + 1e-9
    // for every direction b with a+2b inside the box. This is the
    // Cauchy-Schwarz side of the moment ratio and holds for any weight.
    const double slack = 1e-9;
    std::vector<int> alpha(static_cast<size_t>(n), 0), beta(static_cast<size_t>(n), 0),
        mid(static_cast<size_t>(n), 0), far(static_cast<size_t>(n), 0);
    auto next_in_box = [&](std::vector<int>& v, const std::vector<int>& caps) {
        for (int i = n - 1; i >= 0; --i) {
            if (v[static_cast<size_t>(i)] < caps[static_cast<size_t>(i)]) {
                ++v[static_cast<size_t>(i)];
                std::fill(v.begin() + i + 1, v.end(), 0);
                return true;
            }
        }
        return false;
    };
    const std::vector<int> alpha_caps(static_cast<size_t>(n), cap);
    std::fill(alpha.begin(), alpha.end(), 0);
    do {
        std::vector<int> beta_caps(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i)
            beta_caps[static_cast<size_t>(i)] = (cap - alpha[static_cast<size_t>(i)]) / 2;
        std::fill(beta.begin(), beta.end(), 0);
        do {
            bool zero = true;
            for (int v : beta) zero = zero && v == 0;
            if (zero) continue;
            for (int i = 0; i < n; ++i) {
                mid[static_cast<size_t>(i)] =
                    alpha[static_cast<size_t>(i)] + beta[static_cast<size_t>(i)];
                far[static_cast<size_t>(i)] =
                    alpha[static_cast<size_t>(i)] + 2 * beta[static_cast<size_t>(i)];
            }
            const double la = log_entries_[flat_index(alpha)];
            const double lm = log_entries_[flat_index(mid)];
            const double lf = log_entries_[flat_index(far)];
            if (2.0 * lm > la + lf + slack) {
                std::string sa, sb;
                for (int v : alpha) sa += std::to_string(v) + " ";
                for (int v : beta) sb += std::to_string(v) + " ";
                throw std::invalid_argument(
                    "MomentTable: directional log-convexity violated at alpha = " + sa +
                    "direction = " + sb + "(excess " + std::to_string(2.0 * lm - la - lf) + ")");
            }
        } while (next_in_box(beta, beta_caps));
    } while (next_in_box(alpha, alpha_caps));
}

MomentTable MomentTable::build(const RadialDomain& domain, const WeightSpec& weight,
                               int max_degree, double tol) {
    if (max_degree < 0) throw std::invalid_argument("build: max_degree must be >= 0");
    const int n = domain.dim();
    const int side = max_degree + 1;
    long count = 1;
    for (int i = 0; i < n; ++i) count *= side;
    std::vector<double> entries(static_cast<size_t>(count));

    // Entries are independent integrals; compute them concurrently. For
    // permutation-symmetric domains only the sorted representative of each
    // index orbit is integrated and the value is shared across the orbit,
    // which also makes the stored table exactly symmetric.
    const bool symmetric = is_symmetric_family(domain);
    std::string first_error;
    std::mutex error_mutex;
    parallel_for(0, count, [&](long flat) {
        std::vector<int> gamma(static_cast<size_t>(n));
        long rem = flat;
        for (int i = n - 1; i >= 0; --i) {
            gamma[static_cast<size_t>(i)] = static_cast<int>(rem % side);
            rem /= side;
        }
        if (symmetric) {
            std::vector<int> sorted(gamma);
            std::sort(sorted.begin(), sorted.end());
            if (sorted != gamma) return;  // filled from the representative below
        }
        try {
            entries[static_cast<size_t>(flat)] =
                compute_moment(domain, weight, MultiIndex(gamma), tol);
        } catch (const std::exception& e) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (first_error.empty())
                first_error = std::string(e.what()) + " [gamma = " + MultiIndex(gamma).to_string() +
                              "]";
        }
    });
    if (!first_error.empty()) throw QuadratureError(first_error, 0.0);

    if (symmetric) {
        std::vector<int> gamma(static_cast<size_t>(n)), sorted(static_cast<size_t>(n));
        for (long flat = 0; flat < count; ++flat) {
            long rem = flat;
            for (int i = n - 1; i >= 0; --i) {
                gamma[static_cast<size_t>(i)] = static_cast<int>(rem % side);
                rem /= side;
            }
            sorted = gamma;
            std::sort(sorted.begin(), sorted.end());
            if (sorted == gamma) continue;
            size_t src = 0;
            for (int v : sorted) src = src * static_cast<size_t>(side) + static_cast<size_t>(v);
            entries[static_cast<size_t>(flat)] = entries[src];
        }
    }

    return MomentTable(domain, weight, max_degree, tol, Provenance::Quadrature,
                       std::move(entries));
}

MomentTable MomentTable::closed_form(const RadialDomain& domain, const WeightSpec& weight,
                                     int max_degree) {
    if (max_degree < 0) throw std::invalid_argument("closed_form: max_degree must be >= 0");
    const int n = domain.dim();
    const int side = max_degree + 1;
    long count = 1;
    for (int i = 0; i < n; ++i) count *= side;
    std::vector<double> entries(static_cast<size_t>(count));
    std::vector<int> gamma(static_cast<size_t>(n));
    for (long flat = 0; flat < count; ++flat) {
        long rem = flat;
        for (int i = n - 1; i >= 0; --i) {
            gamma[static_cast<size_t>(i)] = static_cast<int>(rem % side);
            rem /= side;
        }
        entries[static_cast<size_t>(flat)] = closed_form_moment(domain, weight, MultiIndex(gamma));
    }
    return MomentTable(domain, weight, max_degree, 0.0, Provenance::ClosedForm,
                       std::move(entries));
}

MomentTable MomentTable::from_raw(RadialDomain domain, WeightSpec weight, int max_degree,
                                  double tol, Provenance provenance,
                                  std::vector<double> log_entries) {
    return MomentTable(std::move(domain), std::move(weight), max_degree, tol, provenance,
                       std::move(log_entries));
}

}  // namespace bergman
