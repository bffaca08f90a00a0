#include "bergman/operators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bergman/errors.hpp"
#include "bergman/gamma.hpp"
#include "bergman/inequalities.hpp"

namespace bergman {

namespace {

std::complex<double> pow_conj(std::span<const std::complex<double>> z, const MultiIndex& g,
                              bool conjugate) {
    std::complex<double> v = 1.0;
    for (int i = 0; i < g.dim(); ++i) {
        const auto base =
            conjugate ? std::conj(z[static_cast<size_t>(i)]) : z[static_cast<size_t>(i)];
        for (int k = 0; k < g[i]; ++k) v *= base;
    }
    return v;
}

}  // namespace

TruncatedKernel::TruncatedKernel(const MomentTable& table, int degree)
    : table_(&table), degree_(degree) {
    if (degree < 0) throw std::invalid_argument("TruncatedKernel: degree must be >= 0");
    if (degree > table.max_degree())
        throw TableRangeError("TruncatedKernel: degree " + std::to_string(degree) +
                              " exceeds table max_degree " + std::to_string(table.max_degree()));
    indices_ = indices_with_total_at_most(table.dim(), degree);
}

std::complex<double> TruncatedKernel::eval(std::span<const std::complex<double>> z,
                                           std::span<const std::complex<double>> w) const {
    const int n = table_->dim();
    if (static_cast<int>(z.size()) != n || static_cast<int>(w.size()) != n)
        throw std::invalid_argument("kernel_eval: point dimension mismatch");
    std::vector<std::complex<double>> terms;
    terms.reserve(indices_.size());
    for (const auto& gamma : indices_) {
        const auto t = pow_conj(z, gamma, false) * pow_conj(w, gamma, true) *
                       std::exp(-table_->log_d2(gamma));
        terms.push_back(t);
    }
    std::stable_sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
        return std::abs(a) < std::abs(b);
    });
    std::complex<double> sum = 0.0;
    for (const auto& t : terms) sum += t;
    return sum;
}

std::complex<double> kernel_eval(const TruncatedKernel& kernel,
                                 std::span<const std::complex<double>> z,
                                 std::span<const std::complex<double>> w) {
    return kernel.eval(z, w);
}

MonomialPolynomial truncate(const MonomialPolynomial& poly, int j) {
    if (j < 0) throw std::invalid_argument("truncate: j must be >= 0");
    if (!poly.is_holomorphic())
        throw std::invalid_argument("truncate: input must be holomorphic (no zbar terms)");
    MonomialPolynomial out(poly.dim());
    for (const auto& [term, c] : poly.terms()) {
        if (term.p.total() <= j) out.add_term(term.p, term.q, c);
    }
    return out;
}

std::complex<double> inner_product(const MomentTable& table, const MonomialPolynomial& u,
                                   const MonomialPolynomial& v) {
    if (u.dim() != table.dim() || v.dim() != table.dim())
        throw std::invalid_argument("inner_product: dimension mismatch");
    std::complex<double> total = 0.0;
    for (const auto& [tu, cu] : u.terms()) {
        for (const auto& [tv, cv] : v.terms()) {
            // <z^p zbar^q, z^s zbar^t> = d^2_{p+t} iff p + t = q + s.
            const MultiIndex lhs = tu.p.plus(tv.q);
            const MultiIndex rhs = tu.q.plus(tv.p);
            if (lhs != rhs) continue;
            total += cu * std::conj(cv) * table.d2(lhs);
        }
    }
    return total;
}

double norm_sq(const MomentTable& table, const MonomialPolynomial& u) {
    return inner_product(table, u, u).real();
}

MonomialPolynomial project(const MomentTable& table, const MonomialPolynomial& poly) {
    if (poly.dim() != table.dim()) throw std::invalid_argument("project: dimension mismatch");
    MonomialPolynomial out(poly.dim());
    for (const auto& [term, c] : poly.terms()) {
        MultiIndex m;
        if (!term.p.minus(term.q, m)) continue;  // p < q somewhere: orthogonal to holomorphics
        const double factor = std::exp(table.log_d2(term.p) - table.log_d2(m));
        out.add_term(m, MultiIndex::zeros(poly.dim()), c * factor);
    }
    return out;
}

MonomialPolynomial derivative(const MonomialPolynomial& poly, const MultiIndex& dz,
                              const MultiIndex& dzbar) {
    if (dz.dim() != poly.dim() || dzbar.dim() != poly.dim())
        throw std::invalid_argument("derivative: multi-index dimension mismatch");
    MonomialPolynomial out(poly.dim());
    for (const auto& [term, c] : poly.terms()) {
        MultiIndex p, q;
        if (!term.p.minus(dz, p)) continue;
        if (!term.q.minus(dzbar, q)) continue;
        double coeff = 1.0;
        for (int i = 0; i < poly.dim(); ++i) {
            coeff *= falling_factorial(term.p[i], dz[i]);
            coeff *= falling_factorial(term.q[i], dzbar[i]);
        }
        out.add_term(p, q, c * coeff);
    }
    return out;
}

MonomialPolynomial m_beta_apply(const MomentTable& table, const MultiIndex& beta,
                                const MonomialPolynomial& poly) {
    if (poly.dim() != table.dim() || beta.dim() != table.dim())
        throw std::invalid_argument("m_beta_apply: dimension mismatch");
    if (!poly.is_holomorphic())
        throw std::invalid_argument("m_beta_apply: input must be holomorphic");
    MonomialPolynomial out(poly.dim());
    const MultiIndex zero = MultiIndex::zeros(poly.dim());
    for (const auto& [term, c] : poly.terms()) {
        const MultiIndex& alpha = term.p;
        const MultiIndex shifted = alpha.plus(beta);
        const MultiIndex target = alpha.plus(beta.scaled(2));
        const double log_coeff = log_binomial_factor(alpha, beta) + table.log_d2(alpha) -
                                 table.log_d2(shifted);
        out.add_term(target, zero, c * std::exp(log_coeff));
    }
    return out;
}

double m_beta_norm_ratio(const MomentTable& table, const MultiIndex& alpha,
                         const MultiIndex& beta) {
    return binomial_factor(alpha, beta) * lemma_coeff_ratio(table, alpha, beta);
}

double adjoint_identity_residual(const MomentTable& table, const MultiIndex& alpha,
                                 const MultiIndex& beta) {
    const MonomialPolynomial h = MonomialPolynomial::holomorphic_monomial(alpha);
    const MonomialPolynomial g = MonomialPolynomial::holomorphic_monomial(alpha.plus(beta));
    const MultiIndex zero = MultiIndex::zeros(alpha.dim());

    const std::complex<double> lhs = inner_product(table, h, derivative(g, beta, zero));
    const std::complex<double> rhs =
        inner_product(table, derivative(m_beta_apply(table, beta, h), beta, zero), g);
    const double denom = std::abs(lhs);
    if (denom == 0.0 && std::abs(rhs) == 0.0) return 0.0;
    if (denom == 0.0) return std::abs(lhs - rhs);
    return std::abs(lhs - rhs) / denom;
}

}  // namespace bergman
