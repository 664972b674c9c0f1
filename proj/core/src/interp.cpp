#include "oscbath/interp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "oscbath/errors.hpp"

namespace oscbath {

MonotoneCubic::MonotoneCubic(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
    const std::size_t n = x_.size();
    if (n < 2 || y_.size() != n) {
        throw std::invalid_argument("MonotoneCubic: need >= 2 matching points");
    }
    for (std::size_t i = 1; i < n; ++i) {
        if (!(x_[i] > x_[i - 1])) {
            throw std::invalid_argument("MonotoneCubic: x must be strictly increasing");
        }
    }
    // Fritsch-Carlson slopes
    std::vector<double> h(n - 1), d(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        h[i] = x_[i + 1] - x_[i];
        d[i] = (y_[i + 1] - y_[i]) / h[i];
    }
    slope_.assign(n, 0.0);
    slope_[0] = d[0];
    slope_[n - 1] = d[n - 2];
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (d[i - 1] * d[i] <= 0.0) {
            slope_[i] = 0.0;
        } else {
            const double w1 = 2.0 * h[i] + h[i - 1];
            const double w2 = h[i] + 2.0 * h[i - 1];
            slope_[i] = (w1 + w2) / (w1 / d[i - 1] + w2 / d[i]);
        }
    }
    // Clamp endpoint slopes (standard PCHIP end conditions)
    auto limit_end = [](double m, double dd) {
        if (dd == 0.0 || m * dd < 0.0) return 0.0;
        if (std::abs(m) > 3.0 * std::abs(dd)) return 3.0 * dd;
        return m;
    };
    slope_[0] = limit_end(((2.0 * h[0] + (n > 2 ? h[1] : h[0])) * d[0] -
                           h[0] * (n > 2 ? d[1] : d[0])) /
                              (h[0] + (n > 2 ? h[1] : h[0])),
                          d[0]);
    slope_[n - 1] =
        limit_end(((2.0 * h[n - 2] + (n > 2 ? h[n - 3] : h[n - 2])) * d[n - 2] -
                   h[n - 2] * (n > 2 ? d[n - 3] : d[n - 2])) /
                      (h[n - 2] + (n > 2 ? h[n - 3] : h[n - 2])),
                  d[n - 2]);

    // Fritsch-Carlson monotonicity limiter on interior slopes
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (d[i] == 0.0) {
            slope_[i] = slope_[i + 1] = 0.0;
            continue;
        }
        const double a = slope_[i] / d[i];
        const double b = slope_[i + 1] / d[i];
        const double s = a * a + b * b;
        if (s > 9.0) {
            const double tau = 3.0 / std::sqrt(s);
            slope_[i] = tau * a * d[i];
            slope_[i + 1] = tau * b * d[i];
        }
    }
}

double MonotoneCubic::operator()(double t) const {
    if (x_.empty()) throw std::logic_error("MonotoneCubic: empty interpolant");
    if (t < x_.front() || t > x_.back()) {
        throw RangeError("MonotoneCubic: query outside tabulated range");
    }
    auto it = std::upper_bound(x_.begin(), x_.end(), t);
    std::size_t i = (it == x_.begin()) ? 0 : static_cast<std::size_t>(it - x_.begin()) - 1;
    if (i + 1 >= x_.size()) i = x_.size() - 2;
    const double h = x_[i + 1] - x_[i];
    const double s = (t - x_[i]) / h;
    const double s2 = s * s, s3 = s2 * s;
    const double h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
    const double h10 = s3 - 2.0 * s2 + s;
    const double h01 = -2.0 * s3 + 3.0 * s2;
    const double h11 = s3 - s2;
    return h00 * y_[i] + h10 * h * slope_[i] + h01 * y_[i + 1] + h11 * h * slope_[i + 1];
}

}  // namespace oscbath
