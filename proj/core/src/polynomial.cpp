#include "bergman/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace bergman {

MonomialPolynomial::MonomialPolynomial(int dim) : dim_(dim) {
    if (dim < 1) throw std::invalid_argument("MonomialPolynomial: dimension must be >= 1");
}

MonomialPolynomial MonomialPolynomial::monomial(MultiIndex p, MultiIndex q,
                                                std::complex<double> coeff) {
    if (p.dim() != q.dim())
        throw std::invalid_argument("monomial: p and q dimensions disagree");
    MonomialPolynomial poly(p.dim());
    poly.add_term(p, q, coeff);
    return poly;
}

MonomialPolynomial MonomialPolynomial::holomorphic_monomial(MultiIndex p,
                                                            std::complex<double> coeff) {
    const int n = p.dim();
    return monomial(std::move(p), MultiIndex::zeros(n), coeff);
}

void MonomialPolynomial::add_term(const MultiIndex& p, const MultiIndex& q,
                                  std::complex<double> coeff) {
    if (p.dim() != dim_ || q.dim() != dim_)
        throw std::invalid_argument("add_term: multi-index dimension mismatch");
    if (coeff == 0.0) return;
    Term key{p, q};
    auto [it, inserted] = terms_.emplace(std::move(key), coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second == 0.0) terms_.erase(it);
    }
}

bool MonomialPolynomial::is_holomorphic() const {
    return std::all_of(terms_.begin(), terms_.end(),
                       [](const auto& t) { return t.first.q.total() == 0; });
}

int MonomialPolynomial::max_p_degree() const {
    int d = 0;
    for (const auto& [term, c] : terms_) d = std::max(d, term.p.total());
    return d;
}

int MonomialPolynomial::max_q_degree() const {
    int d = 0;
    for (const auto& [term, c] : terms_) d = std::max(d, term.q.total());
    return d;
}

MultiIndex MonomialPolynomial::needed_table_degree() const {
    std::vector<int> m(static_cast<size_t>(dim_), 0);
    for (const auto& [term, c] : terms_) {
        for (int i = 0; i < dim_; ++i)
            m[static_cast<size_t>(i)] = std::max(m[static_cast<size_t>(i)], term.p[i] + term.q[i]);
    }
    return MultiIndex(std::move(m));
}

std::complex<double> MonomialPolynomial::coefficient(const MultiIndex& p,
                                                     const MultiIndex& q) const {
    auto it = terms_.find(Term{p, q});
    return it == terms_.end() ? 0.0 : it->second;
}

std::complex<double> MonomialPolynomial::evaluate(
    std::span<const std::complex<double>> z) const {
    if (static_cast<int>(z.size()) != dim_)
        throw std::invalid_argument("evaluate: point dimension mismatch");
    std::complex<double> total = 0.0;
    for (const auto& [term, c] : terms_) {
        std::complex<double> v = c;
        for (int i = 0; i < dim_; ++i) {
            const auto zi = z[static_cast<size_t>(i)];
            for (int k = 0; k < term.p[i]; ++k) v *= zi;
            const auto zc = std::conj(zi);
            for (int k = 0; k < term.q[i]; ++k) v *= zc;
        }
        total += v;
    }
    return total;
}

MonomialPolynomial& MonomialPolynomial::operator+=(const MonomialPolynomial& o) {
    if (o.dim_ != dim_) throw std::invalid_argument("polynomial dimension mismatch");
    for (const auto& [term, c] : o.terms_) add_term(term.p, term.q, c);
    return *this;
}

MonomialPolynomial& MonomialPolynomial::operator-=(const MonomialPolynomial& o) {
    if (o.dim_ != dim_) throw std::invalid_argument("polynomial dimension mismatch");
    for (const auto& [term, c] : o.terms_) add_term(term.p, term.q, -c);
    return *this;
}

MonomialPolynomial& MonomialPolynomial::operator*=(std::complex<double> c) {
    if (c == 0.0) {
        terms_.clear();
        return *this;
    }
    for (auto& [term, coeff] : terms_) coeff *= c;
    return *this;
}

std::string MonomialPolynomial::to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [term, c] : terms_) {
        char buf[96];
        std::snprintf(buf, sizeof(buf), "(%.17g%+.17gi)", c.real(), c.imag());
        if (!s.empty()) s += " + ";
        s += buf;
        s += " z^(" + term.p.to_string() + ")";
        if (term.q.total() > 0) s += " zbar^(" + term.q.to_string() + ")";
    }
    return s;
}

double max_coefficient_difference(const MonomialPolynomial& a, const MonomialPolynomial& b) {
    double m = 0.0;
    for (const auto& [term, c] : a.terms())
        m = std::max(m, std::abs(c - b.coefficient(term.p, term.q)));
    for (const auto& [term, c] : b.terms())
        m = std::max(m, std::abs(c - a.coefficient(term.p, term.q)));
    return m;
}

}  // namespace bergman
