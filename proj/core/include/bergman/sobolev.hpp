#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "bergman/moments.hpp"
#include "bergman/polynomial.hpp"

namespace bergman {

/// Squared weighted Sobolev norm
///   ||f||_{k,lambda}^2 = sum_{|b+g| <= k} || d^g_z d^b_zbar f ||_lambda^2
/// over all ordered derivative pairs, each term exact through the moment table.
double sobolev_norm_sq(const MomentTable& table, const MonomialPolynomial& poly, int k);
double sobolev_norm(const MomentTable& table, const MonomialPolynomial& poly, int k);

/// || d^beta_z (B f) ||_lambda^2: project, differentiate exactly, take the
/// squared weighted norm.
double projection_derivative_norm_sq(const MomentTable& table, const MonomialPolynomial& poly,
                                     const MultiIndex& beta);

enum class InputFamily { PureMonomials, RandomMixed };

enum class Trend { Plateau, Growing };

/// Outcome of the uniform-boundedness experiment for d^beta o B on W^k.
struct BoundednessReport {
    std::string domain_id;
    std::string weight_id;
    int k = 0;
    MultiIndex beta;
    std::string family;
    /// sup of ||d^beta B f||^2 / ||f||_{k}^2 over inputs of each degree,
    /// degree = max(|p|, |q|) over the input's terms.
    std::vector<std::pair<int, double>> per_degree_sup;
    double overall_sup = 0.0;
    Trend trend = Trend::Plateau;

    static std::string csv_header();
    std::string csv_rows() const;
    std::string summary_line() const;
};

/// Runs the ratio sweep over monomials z^p zbar^q with |p|, |q| <= input_degree
/// (or `count` random mixed polynomials per degree with the given seed), and
/// flags the trend: plateau when the last three per-degree sups agree within
/// 5% relative spread, growing otherwise. A growing trend on a convex fixture
/// contradicts the uniform bound and fails the experiment downstream.
BoundednessReport boundedness_experiment(const MomentTable& table, int k, const MultiIndex& beta,
                                         int input_degree, InputFamily family, uint64_t seed = 0,
                                         int count = 16);

}  // namespace bergman
