// interp.hpp — Monotone cubic (Fritsch-Carlson) interpolation on a fixed grid
#pragma once

#include <vector>

namespace oscbath {

// Shape-preserving piecewise-cubic interpolant. Monotone data produce a
// monotone interpolant; evaluation outside the grid throws.
class MonotoneCubic {
public:
    MonotoneCubic() = default;
    MonotoneCubic(std::vector<double> x, std::vector<double> y);

    double operator()(double t) const;

    double x_front() const { return x_.front(); }
    double x_back() const { return x_.back(); }

private:
    std::vector<double> x_, y_, slope_;
};

}  // namespace oscbath
