#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "bergman/moments.hpp"
#include "bergman/multi_index.hpp"

namespace bergman {

struct InequalityReport {
    std::string name;
    std::string parameters;
    double worst_ratio = 0.0;
    double min_ratio = 0.0;
    std::string worst_witness;
    bool pass = false;
    bool hypothesis_verified = true;  // Prekopa-Leindler reports only
    long samples = 0;

    std::string csv_row() const;
    static std::string csv_header();
};

/// Non-negative function on a box for the Prekopa-Leindler check.
struct SampledFunction {
    std::string name;
    std::function<double(std::span<const double>)> eval;
};

struct PLBox {
    std::vector<double> lo;
    std::vector<double> hi;
};

/// Checks one Prekopa-Leindler instance on a midpoint grid:
///  (i)  hypothesis h((1-t)x + t y) >= f(x)^(1-t) g(y)^t on all grid pairs,
///  (ii) midpoint-rule integrals of f, g, h,
///  (iii) conclusion int h >= (int f)^(1-t) (int g)^t - tol.
/// A failed hypothesis marks the report hypothesis-not-verified instead of a
/// conclusion failure. For t = 1/2 the combination points land on a halved
/// grid, so the pair scan costs one table of h values rather than grid^2n
/// evaluations.
InequalityReport check_prekopa_leindler(const SampledFunction& f, const SampledFunction& g,
                                        const SampledFunction& h, const PLBox& box, double t,
                                        int grid, double tol = 1e-8);

/// d_alpha d_{alpha+2 beta} / d_{alpha+beta}^2 from the log table. At least 1
/// up to round-off by Cauchy-Schwarz; bounded by 4^{|beta|} on convex
/// fixtures (the Prekopa-Leindler route with the scalar constant 2^b applied
/// per coordinate with eta = 2 beta).
double lemma_coeff_ratio(const MomentTable& table, const MultiIndex& alpha,
                         const MultiIndex& beta);

/// Scans lemma_coeff_ratio over all alpha with alpha_i <= max_degree; passes
/// when every ratio lies in [1 - 1e-9, 4^{|beta|} + 1e-6].
InequalityReport scan_lemma_coeff(const MomentTable& table, const MultiIndex& beta,
                                  int max_degree);

/// binom(alpha+beta, beta) / binom(alpha+2 beta, beta) in (0, 1], via log-Gamma.
double binomial_factor(const MultiIndex& alpha, const MultiIndex& beta);
double log_binomial_factor(const MultiIndex& alpha, const MultiIndex& beta);

/// log LHS - log RHS of the scalar midpoint inequality
///   2^b ((u+v)/2)^(a+b) >= sqrt(u^a v^(a+2b)),
/// +inf when the right side vanishes and the left does not.
double scalar_midpoint_log_gap(double u, double v, int a, int b);

/// The inequality itself, evaluated in the log domain.
bool check_scalar_midpoint(double u, double v, int a, int b, double tol = 1e-12);

}  // namespace bergman
