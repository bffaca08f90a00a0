#pragma once

#include <span>
#include <string>
#include <vector>

#include "bergman/geometry.hpp"
#include "bergman/multi_index.hpp"
#include "bergman/weight.hpp"

namespace bergman {

enum class Provenance { Quadrature, ClosedForm, LoadedFromFile };

std::string provenance_name(Provenance p);
Provenance provenance_from_name(const std::string& name);

/// log of d_gamma^2 = (2 pi)^n \int_R r^(2 gamma + 1) lambda(r) dr, computed
/// with relative error <= tol. Structured families use nested adaptive
/// Gauss-Legendre with per-level limits solved from rho = 0; the disc with an
/// exponential weight factor switches to the substitution x = -rho(r); Custom
/// domains fall back to indicator quadrature with Richardson refinement
/// (error estimate heuristic there). Throws QuadratureError when the
/// refinement budget runs out.
double compute_moment(const RadialDomain& domain, const WeightSpec& weight,
                      const MultiIndex& gamma, double tol);

/// log d_gamma^2 through log-Gamma arithmetic, for the families that admit
/// one with weight x^a:
///   disc    pi R^(2m+2) Gamma(m+1) Gamma(a+1) / Gamma(m+a+2)
///   ball    pi^n R^(2|gamma|+2n) gamma! Gamma(a+1) / Gamma(n+|gamma|+a+1)
///   polydisc  product of per-coordinate disc values.
/// For a > 0 the polydisc product corresponds to the per-factor weight
/// prod_i f(1 - (r_i/R_i)^2); with the max-form defining function the two
/// weights coincide only at a = 0, so quadrature comparisons against the
/// polydisc product form are meaningful only there.
/// Throws std::invalid_argument for unsupported family/weight pairings.
double closed_form_moment(const RadialDomain& domain, const WeightSpec& weight,
                          const MultiIndex& gamma);

/// Immutable map gamma -> log d_gamma^2 over the box gamma_i <= max_degree.
/// The single source of truth for every norm in the library. Construction
/// validates positivity and directional midpoint log-convexity
/// (2 L(a+b) <= L(a) + L(a+2b) + 1e-9, the Cauchy-Schwarz side).
class MomentTable {
public:
    static MomentTable build(const RadialDomain& domain, const WeightSpec& weight, int max_degree,
                             double tol);
    static MomentTable closed_form(const RadialDomain& domain, const WeightSpec& weight,
                                   int max_degree);
    /// Assembles a table from precomputed entries (deserialization path);
    /// runs the same validation as build.
    static MomentTable from_raw(RadialDomain domain, WeightSpec weight, int max_degree, double tol,
                                Provenance provenance, std::vector<double> log_entries);

    const RadialDomain& domain() const { return domain_; }
    const WeightSpec& weight() const { return weight_; }
    int dim() const { return domain_.dim(); }
    int max_degree() const { return max_degree_; }
    double tolerance() const { return tol_; }
    Provenance provenance() const { return provenance_; }

    bool covers(std::span<const int> gamma) const;
    bool covers(const MultiIndex& gamma) const { return covers(gamma.data()); }

    /// log d_gamma^2; throws TableRangeError outside the box.
    double log_d2(std::span<const int> gamma) const;
    double log_d2(const MultiIndex& gamma) const { return log_d2(gamma.data()); }
    /// d_gamma^2 itself (cached exponentials).
    double d2(std::span<const int> gamma) const;
    double d2(const MultiIndex& gamma) const { return d2(gamma.data()); }

    std::span<const double> raw_log_entries() const { return log_entries_; }
    /// Cached d^2 values in the same row-major layout as raw_log_entries().
    std::span<const double> raw_d2_entries() const { return entries_; }
    long entry_count() const { return static_cast<long>(log_entries_.size()); }

private:
    MomentTable(RadialDomain domain, WeightSpec weight, int max_degree, double tol,
                Provenance provenance, std::vector<double> log_entries);
    size_t flat_index(std::span<const int> gamma) const;
    void validate() const;

    RadialDomain domain_;
    WeightSpec weight_;
    int max_degree_;
    double tol_;
    Provenance provenance_;
    std::vector<double> log_entries_;
    std::vector<double> entries_;  // exp of log_entries_
};

/// Plain-text table persistence; log values round-trip bit-exactly
/// (hexadecimal float records). See README for the exact layout.
void save_table(const MomentTable& table, const std::string& path);
MomentTable load_table(const std::string& path);

}  // namespace bergman
