// ode.hpp — Adaptive embedded Runge-Kutta (Dormand-Prince 5(4)) over Eigen
// vector states.
#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>

namespace oscbath {

struct OdeSettings {
    double rel_tol = 1e-9;
    double abs_tol = 1e-12;
    double max_step = 0.0;  // 0 = unlimited
};

// Integrates y' = f(t, y) from t to t_target. After every accepted step the
// hook may inspect and adjust y (e.g. re-symmetrization); the next stage
// derivative is recomputed from the adjusted state.
//
// Vec: Eigen dense vector (real or complex).
template <typename Vec, typename Rhs, typename Hook>
void integrate_adaptive(Rhs&& f, double& t, Vec& y, double t_target,
                        const OdeSettings& opt, Hook&& on_accept) {
    if (t_target == t) return;
    if (t_target < t) throw std::invalid_argument("integrate_adaptive: backwards target");

    // Dormand-Prince 5(4) tableau
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5,
                            c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                            a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                            a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                            a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    // b - b* (error weights, 5th minus embedded 4th order)
    static constexpr double e1 = 35.0 / 384 - 5179.0 / 57600,
                            e3 = 500.0 / 1113 - 7571.0 / 16695,
                            e4 = 125.0 / 192 - 393.0 / 640,
                            e5 = -2187.0 / 6784 + 92097.0 / 339200,
                            e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;

    const double span = t_target - t;
    double h = span * 1e-4;
    if (opt.max_step > 0.0) h = std::min(h, opt.max_step);

    Vec k1(y.size()), k2(y.size()), k3(y.size()), k4(y.size()), k5(y.size()),
        k6(y.size()), k7(y.size()), ytmp(y.size()), ynew(y.size());

    auto error_norm = [&](const Vec& err, const Vec& y0, const Vec& y1) {
        double acc = 0.0;
        for (Eigen::Index i = 0; i < err.size(); ++i) {
            const double sc = opt.abs_tol +
                              opt.rel_tol * std::max(std::abs(y0[i]), std::abs(y1[i]));
            const double q = std::abs(err[i]) / sc;
            acc += q * q;
        }
        return std::sqrt(acc / static_cast<double>(err.size()));
    };

    int consecutive_rejects = 0;
    while (t < t_target) {
        const double remaining = t_target - t;
        bool clipped = false;
        if (h >= remaining) {
            h = remaining;
            clipped = true;
        }
        if (!(h > std::abs(t) * 1e-15 + 1e-290)) {
            throw std::runtime_error("integrate_adaptive: step size underflow");
        }

        f(t, y, k1);
        ytmp = y + h * (a21 * k1);
        f(t + c2 * h, ytmp, k2);
        ytmp = y + h * (a31 * k1 + a32 * k2);
        f(t + c3 * h, ytmp, k3);
        ytmp = y + h * (a41 * k1 + a42 * k2 + a43 * k3);
        f(t + c4 * h, ytmp, k4);
        ytmp = y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
        f(t + c5 * h, ytmp, k5);
        ytmp = y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
        f(t + h, ytmp, k6);
        ynew = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        f(t + h, ynew, k7);
        ytmp = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

        const double err = error_norm(ytmp, y, ynew);
        if (err <= 1.0) {
            t += h;
            y.swap(ynew);
            on_accept(t, y, h);
            consecutive_rejects = 0;
            double factor = (err > 0.0) ? 0.9 * std::pow(err, -0.2) : 5.0;
            factor = std::min(5.0, std::max(0.2, factor));
            if (!clipped) h *= factor;
            else h = std::min(h * factor, remaining);
            if (opt.max_step > 0.0) h = std::min(h, opt.max_step);
        } else {
            ++consecutive_rejects;
            if (consecutive_rejects > 64) {
                throw std::runtime_error("integrate_adaptive: repeated step rejection");
            }
            h *= std::min(0.9, std::max(0.1, 0.9 * std::pow(err, -0.2)));
        }
    }
}

}  // namespace oscbath
