// gauss.hpp — Gauss-Legendre rules and adaptive panel integration
#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace oscbath {

// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
// Computed once per n by Newton iteration and cached (thread-safe).
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

const GaussRule& gauss_legendre(int n);

// Integrate f over [a, b] with a single n-point rule.
template <typename F>
auto gauss_panel(F&& f, double a, double b, const GaussRule& rule)
    -> decltype(f(0.0)) {
    using R = decltype(f(0.0));
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    R sum = R{};
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
    }
    return sum * half;
}

// Adaptive bisection with an embedded GL15/GL7-style error estimate.
// Returns the integral of f over [a, b]; sets *converged=false if the
// recursion depth limit is hit before the local tolerance is met.
double adaptive_integrate(const std::function<double(double)>& f, double a,
                          double b, double rel_tol, double abs_tol,
                          bool* converged = nullptr, int max_depth = 28);

// Semi-infinite integral of a smooth decaying function over [0, inf):
// geometric segments starting at `scale`, each integrated adaptively,
// stopping when a segment contributes below tolerance. Sets *converged=false
// if the segment budget is exhausted before the contributions die out.
double integrate_decaying_tail(const std::function<double(double)>& f,
                               double scale, double rel_tol,
                               bool* converged = nullptr,
                               int max_segments = 64);

}  // namespace oscbath
