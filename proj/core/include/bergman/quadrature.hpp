#pragma once

#include <algorithm>
#include <cmath>
#include <queue>
#include <span>
#include <vector>

namespace bergman {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Returns the cached n-point Gauss-Legendre rule (Newton iteration on the
/// Legendre recurrence; nodes accurate to machine precision).
const GaussRule& gauss_legendre(int n);

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;  // estimated absolute error
    long evaluations = 0;
    bool converged = false;
};

namespace detail {

template <class F>
double apply_rule(const GaussRule& rule, F&& f, double a, double b) {
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    double s = 0.0;
    for (size_t i = 0; i < rule.nodes.size(); ++i) {
        double v = f(mid + half * rule.nodes[i]);
        // Underflow guard: values this small are indistinguishable from the
        // zero boundary limit and would otherwise produce -inf logs upstream.
        if (std::abs(v) < 1e-300) v = 0.0;
        s += rule.weights[i] * v;
    }
    return s * half;
}

}  // namespace detail

/// Globally adaptive quadrature of f over [a, b]: each segment carries a
/// 31-point Gauss-Legendre estimate with the deviation from the embedded
/// 15-point rule as its error; the worst segment is bisected until the summed
/// error drops below rel_tol * |integral| (or abs_floor for integrals that
/// are essentially zero). Intended for the smooth, non-negative integrands of
/// moment computation; the error estimate is conservative for those.
template <class F>
QuadratureResult integrate_adaptive(F&& f, double a, double b, double rel_tol,
                                    double abs_floor = 1e-300, long max_evals = 4000000) {
    QuadratureResult result;
    if (a == b) {
        result.converged = true;
        return result;
    }
    const GaussRule& coarse = gauss_legendre(15);
    const GaussRule& fine = gauss_legendre(31);

    struct Segment {
        double a, b, value, error;
        bool operator<(const Segment& o) const { return error < o.error; }
    };

    auto make_segment = [&](double lo, double hi) {
        const double v_fine = detail::apply_rule(fine, f, lo, hi);
        const double v_coarse = detail::apply_rule(coarse, f, lo, hi);
        result.evaluations += 46;
        return Segment{lo, hi, v_fine, std::abs(v_fine - v_coarse)};
    };

    std::priority_queue<Segment> queue;
    queue.push(make_segment(a, b));
    double total = queue.top().value;
    double total_error = queue.top().error;

    while (true) {
        const double target = std::max(rel_tol * std::abs(total), abs_floor);
        if (total_error <= target) {
            result.converged = true;
            break;
        }
        if (result.evaluations >= max_evals) break;
        Segment worst = queue.top();
        queue.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            // Interval is at floating point resolution; treat it as exact.
            total_error -= worst.error;
            worst.error = 0.0;
            queue.push(worst);
            continue;
        }
        Segment left = make_segment(worst.a, mid);
        Segment right = make_segment(mid, worst.b);
        total += left.value + right.value - worst.value;
        total_error += left.error + right.error - worst.error;
        queue.push(left);
        queue.push(right);
    }
    result.value = total;
    result.error = total_error;
    return result;
}

}  // namespace bergman
