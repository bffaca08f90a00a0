#pragma once

#include <complex>
#include <map>
#include <span>
#include <string>

#include "bergman/multi_index.hpp"

namespace bergman {

/// Finite sum of mixed monomials  sum c_{p,q} z^p conj(z)^q. The test-function
/// space for projection and Sobolev experiments; exactly representable, so
/// every operator identity can be checked without discretization error.
class MonomialPolynomial {
public:
    struct Term {
        MultiIndex p;  // holomorphic exponents
        MultiIndex q;  // anti-holomorphic exponents
        auto operator<=>(const Term&) const = default;
    };
    using TermMap = std::map<Term, std::complex<double>>;

    explicit MonomialPolynomial(int dim);

    static MonomialPolynomial monomial(MultiIndex p, MultiIndex q,
                                       std::complex<double> coeff = 1.0);
    static MonomialPolynomial holomorphic_monomial(MultiIndex p, std::complex<double> coeff = 1.0);

    int dim() const { return dim_; }
    bool empty() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }
    const TermMap& terms() const { return terms_; }

    /// Adds coeff * z^p conj(z)^q; terms that cancel to zero are dropped.
    void add_term(const MultiIndex& p, const MultiIndex& q, std::complex<double> coeff);

    bool is_holomorphic() const;
    /// Largest total degree of |p| (resp. |q|) over the terms; 0 when empty.
    int max_p_degree() const;
    int max_q_degree() const;
    /// Componentwise maxima of p + q over the terms: the moment-table degree
    /// the polynomial's weighted norm requires.
    MultiIndex needed_table_degree() const;

    std::complex<double> coefficient(const MultiIndex& p, const MultiIndex& q) const;
    std::complex<double> evaluate(std::span<const std::complex<double>> z) const;

    MonomialPolynomial& operator+=(const MonomialPolynomial& o);
    MonomialPolynomial& operator-=(const MonomialPolynomial& o);
    MonomialPolynomial& operator*=(std::complex<double> c);

    std::string to_string() const;

private:
    int dim_;
    TermMap terms_;
};

/// max_{p,q} |coeff_a(p,q) - coeff_b(p,q)| over the union of term sets.
double max_coefficient_difference(const MonomialPolynomial& a, const MonomialPolynomial& b);

}  // namespace bergman
