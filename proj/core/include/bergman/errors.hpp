#pragma once

#include <stdexcept>
#include <string>

namespace bergman {

/// A requested multi-index lies outside the degree range of a moment table.
class TableRangeError : public std::out_of_range {
public:
    explicit TableRangeError(const std::string& what) : std::out_of_range(what) {}
};

/// Adaptive quadrature exhausted its refinement budget before reaching the
/// requested tolerance. Carries the best error estimate achieved.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, double achieved)
        : std::runtime_error(what), achieved_error(achieved) {}
    double achieved_error;
};

/// Malformed or version-incompatible file contents (tables, configs, polynomials).
class FormatError : public std::runtime_error {
public:
    explicit FormatError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace bergman
