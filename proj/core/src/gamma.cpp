#include "bergman/gamma.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace bergman {

namespace {
constexpr int kTableSize = 4096;

const std::vector<double>& table() {
    static std::once_flag once;
    static std::vector<double> t;
    std::call_once(once, [] {
        t.resize(kTableSize);
        for (int i = 0; i < kTableSize; ++i) t[static_cast<size_t>(i)] = std::lgamma(i + 1.0);
    });
    return t;
}
}  // namespace

double log_factorial(int n) {
    if (n < 0) throw std::invalid_argument("log_factorial: negative argument");
    if (n < kTableSize) return table()[static_cast<size_t>(n)];
    return std::lgamma(n + 1.0);
}

double falling_factorial(int n, int k) {
    if (k < 0) throw std::invalid_argument("falling_factorial: negative k");
    if (k > n) return 0.0;
    double p = 1.0;
    for (int i = 0; i < k; ++i) p *= static_cast<double>(n - i);
    return p;
}

}  // namespace bergman
