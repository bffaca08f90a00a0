#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace bergman {

/// A convex Reinhardt domain, represented through its radial image: the set
/// of modulus vectors r = (|z_1|, ..., |z_n|) in the non-negative orthant.
/// The defining function rho is negative strictly inside the radial image,
/// zero on its boundary, and convex. All values are immutable after
/// construction and safe for concurrent reads.
class RadialDomain {
public:
    enum class Family { Ball, Polydisc, Ellipsoid, Custom };

    /// Unit disc in C (radius r): rho(r1) = (r1/R)^2 - 1.
    static RadialDomain disc(double radius = 1.0);
    /// Ball in C^n: rho(r) = sum (r_i/R)^2 - 1.
    static RadialDomain ball(int dim, double radius = 1.0);
    /// Polydisc with per-coordinate radii: rho(r) = max_i (r_i/R_i)^2 - 1.
    static RadialDomain polydisc(std::vector<double> radii);
    /// Complex ellipsoid: rho(r) = sum (r_i/A_i)^(2 p_i) - 1, exponents p_i >= 1.
    /// Empty axes means unit semi-axes.
    static RadialDomain ellipsoid(std::vector<int> exponents, std::vector<double> axes = {});
    /// Black-box defining function with a bounding box for the radial image.
    /// A null evaluator yields a descriptor-only domain (deserialized tables).
    static RadialDomain custom(std::string name, int dim,
                               std::function<double(std::span<const double>)> rho,
                               std::vector<double> box_hi);

    const std::string& name() const { return name_; }
    Family family() const { return family_; }
    int dim() const { return dim_; }

    /// Defining-function value at a point of the non-negative orthant.
    double rho(std::span<const double> r) const;
    /// True iff rho(r) < 0.
    bool contains(std::span<const double> r) const;

    /// Upper corners of the axis-aligned bounding box of the radial image
    /// (the lower corner is the origin).
    const std::vector<double>& radial_box() const { return box_hi_; }

    /// Upper integration limit for coordinate `coord` when the preceding
    /// coordinates are fixed at `prefix`, found from rho = 0. For Custom
    /// domains this is just the bounding box edge.
    double section_limit(std::span<const double> prefix, int coord) const;

    // Structured parameters (empty when not applicable to the family).
    const std::vector<double>& radii() const { return radii_; }
    const std::vector<int>& exponents() const { return exponents_; }
    const std::vector<double>& axes() const { return axes_; }

    bool has_evaluator() const;

    /// Canonical one-line descriptor, reused by config and table files:
    /// "disc", "disc 2", "ball 2", "polydisc 1 1", "ellipsoid 2 2 1", ...
    std::string descriptor() const;
    static RadialDomain from_descriptor(std::span<const std::string> tokens);

private:
    RadialDomain() = default;

    std::string name_;
    Family family_ = Family::Custom;
    int dim_ = 0;
    std::vector<double> box_hi_;
    std::vector<double> radii_;      // Polydisc
    std::vector<int> exponents_;     // Ellipsoid (Ball: all ones)
    std::vector<double> axes_;       // Ellipsoid / Ball semi-axes
    std::function<double(std::span<const double>)> rho_;  // Custom
};

/// Result of a midpoint-convexity probe of rho over the radial box.
struct ConvexityReport {
    double max_excess = 0.0;   // max rho((x+y)/2) - (rho(x)+rho(y))/2
    std::vector<double> witness_x;
    std::vector<double> witness_y;
    long samples = 0;
    double tolerance = 0.0;
    bool pass = false;
};

/// Draws `sample_count` pseudo-random pairs from the radial box (plus a
/// deterministic grid scan at `grid_resolution` points per axis) and reports
/// the worst midpoint-convexity excess of rho.
ConvexityReport check_midpoint_convexity(const RadialDomain& domain, long sample_count,
                                         uint64_t seed, double tol = 1e-12,
                                         int grid_resolution = 64);

}  // namespace bergman
