#include "bergman/inequalities.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "bergman/gamma.hpp"

namespace bergman {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

std::string InequalityReport::csv_header() {
    return "name,parameters,worst_ratio,min_ratio,worst_witness,hypothesis_verified,samples,pass";
}

std::string InequalityReport::csv_row() const {
    std::string s;
    s += name + ",";
    s += "\"" + parameters + "\",";
    s += format_double(worst_ratio) + ",";
    s += format_double(min_ratio) + ",";
    s += "\"" + worst_witness + "\",";
    s += (hypothesis_verified ? "yes," : "no,");
    s += std::to_string(samples) + ",";
    s += pass ? "pass" : "fail";
    return s;
}

InequalityReport check_prekopa_leindler(const SampledFunction& f, const SampledFunction& g,
                                        const SampledFunction& h, const PLBox& box, double t,
                                        int grid, double tol) {
    if (grid < 2) throw std::invalid_argument("check_prekopa_leindler: grid must be >= 2");
    if (!(t > 0.0 && t < 1.0)) throw std::invalid_argument("check_prekopa_leindler: t in (0,1)");
    if (box.lo.size() != box.hi.size() || box.lo.empty())
        throw std::invalid_argument("check_prekopa_leindler: malformed box");
    const int n = static_cast<int>(box.lo.size());
    for (int i = 0; i < n; ++i) {
        if (!(box.lo[static_cast<size_t>(i)] < box.hi[static_cast<size_t>(i)]))
            throw std::invalid_argument("check_prekopa_leindler: empty box");
    }

    InequalityReport report;
    report.name = "prekopa-leindler";
    report.parameters = f.name + ";" + g.name + ";" + h.name + ";t=" + format_double(t) +
                        ";grid=" + std::to_string(grid);

    long points = 1;
    for (int i = 0; i < n; ++i) points *= grid;

    std::vector<double> x(static_cast<size_t>(n));
    auto decode = [&](long idx, int denominator, std::vector<double>& p) {
        for (int i = 0; i < n; ++i) {
            const long c = idx % denominator;
            idx /= denominator;
            p[static_cast<size_t>(i)] =
                box.lo[static_cast<size_t>(i)] +
                (box.hi[static_cast<size_t>(i)] - box.lo[static_cast<size_t>(i)]) *
                    ((static_cast<double>(c) + 0.5) / denominator);
        }
    };

    // Midpoint-rule integrals and cached grid values of f and g.
    std::vector<double> fv(static_cast<size_t>(points)), gv(static_cast<size_t>(points));
    double cell = 1.0;
    for (int i = 0; i < n; ++i)
        cell *= (box.hi[static_cast<size_t>(i)] - box.lo[static_cast<size_t>(i)]) / grid;
    double int_f = 0.0, int_g = 0.0, int_h = 0.0;
    for (long idx = 0; idx < points; ++idx) {
        decode(idx, grid, x);
        const double vf = f.eval(x);
        const double vg = g.eval(x);
        const double vh = h.eval(x);
        if (vf < 0.0 || vg < 0.0 || vh < 0.0)
            throw std::invalid_argument("check_prekopa_leindler: functions must be non-negative");
        fv[static_cast<size_t>(idx)] = vf;
        gv[static_cast<size_t>(idx)] = vg;
        int_f += vf;
        int_g += vg;
        int_h += vh;
    }
    int_f *= cell;
    int_g *= cell;
    int_h *= cell;

    // Hypothesis on all grid pairs. Combination points for t = 1/2 live on
    // the index-sum lattice; precompute h there. Otherwise evaluate h at each
    // combination directly.
    const bool half = t == 0.5;
    std::vector<double> h_half;
    if (half) {
        long half_points = 1;
        for (int i = 0; i < n; ++i) half_points *= 2 * grid - 1;
        h_half.resize(static_cast<size_t>(half_points));
        std::vector<double> p(static_cast<size_t>(n));
        for (long idx = 0; idx < half_points; ++idx) {
            long rem = idx;
            for (int i = 0; i < n; ++i) {
                const long c = rem % (2 * grid - 1);  // c = i + j of the pair indices
                rem /= (2 * grid - 1);
                p[static_cast<size_t>(i)] =
                    box.lo[static_cast<size_t>(i)] +
                    (box.hi[static_cast<size_t>(i)] - box.lo[static_cast<size_t>(i)]) *
                        ((static_cast<double>(c) + 1.0) / (2.0 * grid));
            }
            h_half[static_cast<size_t>(idx)] = h.eval(p);
        }
    }

    double worst_gap = kInf;  // min of h(combo) - f^(1-t) g^t over pairs
    std::string witness;
    std::vector<double> y(static_cast<size_t>(n)), combo(static_cast<size_t>(n));
    std::vector<long> xi(static_cast<size_t>(n)), yi(static_cast<size_t>(n));
    for (long ix = 0; ix < points; ++ix) {
        long rem = ix;
        for (int i = 0; i < n; ++i) {
            xi[static_cast<size_t>(i)] = rem % grid;
            rem /= grid;
        }
        const double f_part =
            half ? fv[static_cast<size_t>(ix)] : std::pow(fv[static_cast<size_t>(ix)], 1.0 - t);
        for (long iy = 0; iy < points; ++iy) {
            double lhs, rhs;
            if (half) {
                rhs = std::sqrt(f_part * gv[static_cast<size_t>(iy)]);
                long rem2 = iy;
                for (int i = 0; i < n; ++i) {
                    yi[static_cast<size_t>(i)] = rem2 % grid;
                    rem2 /= grid;
                }
                long flat = 0;
                for (int i = n - 1; i >= 0; --i)
                    flat = flat * (2 * grid - 1) +
                           (xi[static_cast<size_t>(i)] + yi[static_cast<size_t>(i)]);
                lhs = h_half[static_cast<size_t>(flat)];
            } else {
                rhs = f_part * std::pow(gv[static_cast<size_t>(iy)], t);
                decode(ix, grid, x);
                decode(iy, grid, y);
                for (int i = 0; i < n; ++i)
                    combo[static_cast<size_t>(i)] = (1.0 - t) * x[static_cast<size_t>(i)] +
                                                    t * y[static_cast<size_t>(i)];
                lhs = h.eval(combo);
            }
            const double gap = lhs - rhs;
            ++report.samples;
            if (gap < worst_gap) {
                worst_gap = gap;
                decode(ix, grid, x);
                decode(iy, grid, y);
                witness = "x=(";
                for (int i = 0; i < n; ++i)
                    witness += (i ? "," : "") + format_double(x[static_cast<size_t>(i)]);
                witness += ") y=(";
                for (int i = 0; i < n; ++i)
                    witness += (i ? "," : "") + format_double(y[static_cast<size_t>(i)]);
                witness += ")";
            }
        }
    }
    report.hypothesis_verified = worst_gap >= -tol;
    report.worst_witness = witness;

    const double rhs_integral = std::pow(int_f, 1.0 - t) * std::pow(int_g, t);
    report.min_ratio = worst_gap;
    report.worst_ratio = int_h - rhs_integral;  // conclusion margin
    const bool conclusion = int_h >= rhs_integral - tol;
    report.pass = report.hypothesis_verified && conclusion;
    return report;
}

double lemma_coeff_ratio(const MomentTable& table, const MultiIndex& alpha,
                         const MultiIndex& beta) {
    const MultiIndex mid = alpha.plus(beta);
    const MultiIndex far = alpha.plus(beta.scaled(2));
    return std::exp(0.5 * table.log_d2(alpha) + 0.5 * table.log_d2(far) - table.log_d2(mid));
}

InequalityReport scan_lemma_coeff(const MomentTable& table, const MultiIndex& beta,
                                  int max_degree) {
    if (beta.dim() != table.dim())
        throw std::invalid_argument("scan_lemma_coeff: beta dimension mismatch");
    if (max_degree < 0) throw std::invalid_argument("scan_lemma_coeff: max_degree >= 0");

    InequalityReport report;
    report.name = "lemma-coeff";
    report.parameters = "beta=(" + beta.to_string() + ");table=" + table.domain().descriptor() +
                        ";" + table.weight().descriptor() + ";max_degree=" +
                        std::to_string(max_degree);
    const double bound = std::pow(4.0, beta.total());

    double worst = -kInf, best = kInf;
    MultiIndex worst_alpha;
    for (const auto& alpha : indices_in_box(table.dim(), max_degree)) {
        const double r = lemma_coeff_ratio(table, alpha, beta);
        ++report.samples;
        if (r > worst) {
            worst = r;
            worst_alpha = alpha;
        }
        best = std::min(best, r);
    }
    report.worst_ratio = worst;
    report.min_ratio = best;
    report.worst_witness = "alpha=(" + worst_alpha.to_string() + ")";
    report.pass = worst <= bound + 1e-6 && best >= 1.0 - 1e-9;
    return report;
}

double log_binomial_factor(const MultiIndex& alpha, const MultiIndex& beta) {
    if (alpha.dim() != beta.dim())
        throw std::invalid_argument("binomial_factor: dimension mismatch");
    double s = 0.0;
    for (int i = 0; i < alpha.dim(); ++i) {
        s += 2.0 * log_factorial(alpha[i] + beta[i]);
        s -= log_factorial(alpha[i]);
        s -= log_factorial(alpha[i] + 2 * beta[i]);
    }
    return s;
}

double binomial_factor(const MultiIndex& alpha, const MultiIndex& beta) {
    return std::exp(std::min(log_binomial_factor(alpha, beta), 0.0));
}

double scalar_midpoint_log_gap(double u, double v, int a, int b) {
    if (u < 0.0 || v < 0.0)
        throw std::invalid_argument("scalar_midpoint: u, v must be non-negative");
    if (a < 0 || b < 0) throw std::invalid_argument("scalar_midpoint: a, b must be non-negative");
    const double mid = 0.5 * (u + v);
    // log LHS = b log 2 + (a+b) log mid ; log RHS = (a log u + (a+2b) log v)/2.
    double log_lhs, log_rhs;
    if (mid == 0.0) {
        log_lhs = (a + b == 0) ? b * std::log(2.0) : -kInf;
    } else {
        log_lhs = b * std::log(2.0) + (a + b) * std::log(mid);
    }
    if ((u == 0.0 && a > 0) || (v == 0.0 && a + 2 * b > 0)) {
        log_rhs = -kInf;
    } else {
        log_rhs = 0.5 * (a * (u == 0.0 ? 0.0 : std::log(u)) +
                         (a + 2.0 * b) * (v == 0.0 ? 0.0 : std::log(v)));
    }
    if (log_rhs == -kInf) return kInf;
    return log_lhs - log_rhs;
}

bool check_scalar_midpoint(double u, double v, int a, int b, double tol) {
    return scalar_midpoint_log_gap(u, v, a, b) >= -tol;
}

}  // namespace bergman
