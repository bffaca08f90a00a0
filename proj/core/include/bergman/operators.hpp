#pragma once

#include <complex>
#include <span>

#include "bergman/moments.hpp"
#include "bergman/polynomial.hpp"

namespace bergman {

/// Degree-j truncation of the weighted Bergman kernel series
///   B(z, w) = sum_{|gamma| <= j} z^gamma conj(w)^gamma / d_gamma^2.
class TruncatedKernel {
public:
    TruncatedKernel(const MomentTable& table, int degree);

    const MomentTable& table() const { return *table_; }
    int degree() const { return degree_; }

    /// Terms are accumulated in magnitude-sorted order to contain rounding.
    std::complex<double> eval(std::span<const std::complex<double>> z,
                              std::span<const std::complex<double>> w) const;

private:
    const MomentTable* table_;
    int degree_;
    std::vector<MultiIndex> indices_;
};

std::complex<double> kernel_eval(const TruncatedKernel& kernel,
                                 std::span<const std::complex<double>> z,
                                 std::span<const std::complex<double>> w);

/// Keeps the terms of total degree <= j of a holomorphic polynomial.
/// Throws std::invalid_argument on non-holomorphic input.
MonomialPolynomial truncate(const MonomialPolynomial& poly, int j);

/// Weighted inner product <u, v>_lambda, conjugate-linear in v. On monomials
/// <z^p zbar^q, z^s zbar^t> = d_{p+t}^2 when p + t = q + s componentwise and
/// 0 otherwise; extended bilinearly.
std::complex<double> inner_product(const MomentTable& table, const MonomialPolynomial& u,
                                   const MonomialPolynomial& v);

/// ||u||_lambda^2 = <u, u> (real by construction).
double norm_sq(const MomentTable& table, const MonomialPolynomial& u);

/// Weighted Bergman projection on mixed monomial sums: the term z^p zbar^q
/// contributes (d_p^2 / d_{p-q}^2) z^{p-q} when p >= q componentwise and
/// nothing otherwise. Exact on this input class; idempotent; self-adjoint.
MonomialPolynomial project(const MomentTable& table, const MonomialPolynomial& poly);

/// Exact term-wise derivative d^{dz}_z d^{dzbar}_zbar with falling-factorial
/// coefficients; vanished terms are dropped.
MonomialPolynomial derivative(const MonomialPolynomial& poly, const MultiIndex& dz,
                              const MultiIndex& dzbar);

/// The operator M_beta on holomorphic polynomials:
///   M_beta(z^alpha) = (alpha+beta)!^2 / (alpha! (alpha+2 beta)!)
///                     * d_alpha^2 / d_{alpha+beta}^2 * z^{alpha+2 beta},
/// the unique choice making <h, d^beta g> = <d^beta M_beta h, g> on the
/// monomial basis. Coefficients go through log-Gamma and log-moment
/// differences.
MonomialPolynomial m_beta_apply(const MomentTable& table, const MultiIndex& beta,
                                const MonomialPolynomial& poly);

/// ||M_beta(z^alpha)|| / ||z^alpha|| = binomial_factor(alpha, beta)
///   * d_alpha d_{alpha+2 beta} / d_{alpha+beta}^2.
double m_beta_norm_ratio(const MomentTable& table, const MultiIndex& alpha,
                         const MultiIndex& beta);

/// Relative residual of <h, d^beta g> = <d^beta M_beta h, g> with h = z^alpha
/// and g = z^{alpha+beta}. The identity is algebraic, so the value measures
/// round-off only; both sides vanishing yields 0.
double adjoint_identity_residual(const MomentTable& table, const MultiIndex& alpha,
                                 const MultiIndex& beta);

}  // namespace bergman
