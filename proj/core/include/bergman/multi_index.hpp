#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace bergman {

/// Tuple of non-negative integer exponents. Indexes monomials z^gamma and
/// their moments; the length is the ambient complex dimension.
class MultiIndex {
public:
    MultiIndex() = default;
    explicit MultiIndex(std::vector<int> exponents);
    MultiIndex(std::initializer_list<int> exponents);

    static MultiIndex zeros(int dim);
    static MultiIndex unit(int dim, int coord);

    int dim() const { return static_cast<int>(e_.size()); }
    int operator[](int i) const { return e_[static_cast<size_t>(i)]; }
    std::span<const int> data() const { return e_; }

    /// Total degree |gamma|.
    int total() const;
    int max_component() const;

    MultiIndex plus(const MultiIndex& o) const;
    /// Componentwise difference; fails (returns false) if any entry would go negative.
    bool minus(const MultiIndex& o, MultiIndex& out) const;
    MultiIndex scaled(int c) const;

    bool operator==(const MultiIndex& o) const = default;
    auto operator<=>(const MultiIndex& o) const = default;

    /// Space-separated exponents, e.g. "2 0 1".
    std::string to_string() const;

private:
    std::vector<int> e_;
};

/// All multi-indices of length dim with total degree <= bound, in lexicographic order.
std::vector<MultiIndex> indices_with_total_at_most(int dim, int bound);

/// All multi-indices of length dim with every component <= cap, in lexicographic order.
std::vector<MultiIndex> indices_in_box(int dim, int cap);

}  // namespace bergman
