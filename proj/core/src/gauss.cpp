#include "oscbath/gauss.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace oscbath {

namespace {

GaussRule compute_rule(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
    GaussRule rule;
    rule.nodes.resize(static_cast<std::size_t>(n));
    rule.weights.resize(static_cast<std::size_t>(n));
    // Newton iteration on P_n with Chebyshev-like starting guesses.
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * pp * pp);
        rule.nodes[static_cast<std::size_t>(i)] = -x;
        rule.nodes[static_cast<std::size_t>(n - 1 - i)] = x;
        rule.weights[static_cast<std::size_t>(i)] = w;
        rule.weights[static_cast<std::size_t>(n - 1 - i)] = w;
    }
    if (n % 2 == 1) rule.nodes[static_cast<std::size_t>(n / 2)] = 0.0;
    return rule;
}

}  // namespace

const GaussRule& gauss_legendre(int n) {
    static std::mutex mtx;
    static std::map<int, GaussRule> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, compute_rule(n)).first;
    return it->second;
}

namespace {

double adapt_impl(const std::function<double(double)>& f, double a, double b,
                  double rel_tol, double abs_tol, int depth, int max_depth,
                  bool* converged) {
    const GaussRule& lo = gauss_legendre(7);
    const GaussRule& hi = gauss_legendre(15);
    const double coarse = gauss_panel(f, a, b, lo);
    const double fine = gauss_panel(f, a, b, hi);
    const double err = std::abs(fine - coarse);
    if (err <= abs_tol + rel_tol * std::abs(fine)) return fine;
    if (depth >= max_depth) {
        if (converged) *converged = false;
        return fine;
    }
    const double mid = 0.5 * (a + b);
    return adapt_impl(f, a, mid, rel_tol, 0.5 * abs_tol, depth + 1, max_depth, converged) +
           adapt_impl(f, mid, b, rel_tol, 0.5 * abs_tol, depth + 1, max_depth, converged);
}

}  // namespace

double adaptive_integrate(const std::function<double(double)>& f, double a,
                          double b, double rel_tol, double abs_tol,
                          bool* converged, int max_depth) {
    if (converged) *converged = true;
    if (a == b) return 0.0;
    return adapt_impl(f, a, b, rel_tol, abs_tol, 0, max_depth, converged);
}

double integrate_decaying_tail(const std::function<double(double)>& f,
                               double scale, double rel_tol, bool* converged,
                               int max_segments) {
    double lo = 0.0;
    double width = scale;
    double total = 0.0;
    bool ok_all = true;
    for (int seg = 0; seg < max_segments; ++seg) {
        bool ok = true;
        const double part =
            adaptive_integrate(f, lo, lo + width, 0.1 * rel_tol, 0.0, &ok);
        ok_all = ok_all && ok;
        total += part;
        lo += width;
        width *= 2.0;
        if (std::abs(part) <= rel_tol * std::max(std::abs(total), 1e-300)) {
            if (converged) *converged = ok_all;
            return total;
        }
    }
    if (converged) *converged = false;
    return total;
}

}  // namespace oscbath
