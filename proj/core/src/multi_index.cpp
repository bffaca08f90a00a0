#include "bergman/multi_index.hpp"

#include <algorithm>
#include <stdexcept>

namespace bergman {

MultiIndex::MultiIndex(std::vector<int> exponents) : e_(std::move(exponents)) {
    for (int v : e_) {
        if (v < 0) throw std::invalid_argument("MultiIndex: negative exponent");
    }
}

MultiIndex::MultiIndex(std::initializer_list<int> exponents)
    : MultiIndex(std::vector<int>(exponents)) {}

MultiIndex MultiIndex::zeros(int dim) {
    return MultiIndex(std::vector<int>(static_cast<size_t>(dim), 0));
}

MultiIndex MultiIndex::unit(int dim, int coord) {
    std::vector<int> e(static_cast<size_t>(dim), 0);
    e.at(static_cast<size_t>(coord)) = 1;
    return MultiIndex(std::move(e));
}

int MultiIndex::total() const {
    int s = 0;
    for (int v : e_) s += v;
    return s;
}

int MultiIndex::max_component() const {
    int m = 0;
    for (int v : e_) m = std::max(m, v);
    return m;
}

MultiIndex MultiIndex::plus(const MultiIndex& o) const {
    if (o.dim() != dim()) throw std::invalid_argument("MultiIndex: dimension mismatch");
    std::vector<int> r(e_);
    for (size_t i = 0; i < r.size(); ++i) r[i] += o.e_[i];
    return MultiIndex(std::move(r));
}

bool MultiIndex::minus(const MultiIndex& o, MultiIndex& out) const {
    if (o.dim() != dim()) throw std::invalid_argument("MultiIndex: dimension mismatch");
    std::vector<int> r(e_);
    for (size_t i = 0; i < r.size(); ++i) {
        r[i] -= o.e_[i];
        if (r[i] < 0) return false;
    }
    out = MultiIndex(std::move(r));
    return true;
}

MultiIndex MultiIndex::scaled(int c) const {
    if (c < 0) throw std::invalid_argument("MultiIndex: negative scale");
    std::vector<int> r(e_);
    for (int& v : r) v *= c;
    return MultiIndex(std::move(r));
}

std::string MultiIndex::to_string() const {
    std::string s;
    for (size_t i = 0; i < e_.size(); ++i) {
        if (i) s += ' ';
        s += std::to_string(e_[i]);
    }
    return s;
}

namespace {

void enumerate_total(int dim, int bound, std::vector<int>& cur, std::vector<MultiIndex>& out) {
    if (static_cast<int>(cur.size()) == dim) {
        out.emplace_back(cur);
        return;
    }
    for (int v = 0; v <= bound; ++v) {
        cur.push_back(v);
        enumerate_total(dim, bound - v, cur, out);
        cur.pop_back();
    }
}

void enumerate_box(int dim, int cap, std::vector<int>& cur, std::vector<MultiIndex>& out) {
    if (static_cast<int>(cur.size()) == dim) {
        out.emplace_back(cur);
        return;
    }
    for (int v = 0; v <= cap; ++v) {
        cur.push_back(v);
        enumerate_box(dim, cap, cur, out);
        cur.pop_back();
    }
}

}  // namespace

std::vector<MultiIndex> indices_with_total_at_most(int dim, int bound) {
    if (dim <= 0) throw std::invalid_argument("indices_with_total_at_most: dim must be positive");
    std::vector<MultiIndex> out;
    std::vector<int> cur;
    enumerate_total(dim, bound, cur, out);
    return out;
}

std::vector<MultiIndex> indices_in_box(int dim, int cap) {
    if (dim <= 0) throw std::invalid_argument("indices_in_box: dim must be positive");
    std::vector<MultiIndex> out;
    std::vector<int> cur;
    enumerate_box(dim, cap, cur, out);
    return out;
}

}  // namespace bergman
