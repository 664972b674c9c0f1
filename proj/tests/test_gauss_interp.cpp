#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oscbath/errors.hpp"
#include "oscbath/gauss.hpp"
#include "oscbath/interp.hpp"

using namespace oscbath;

TEST_CASE("gauss_legendre integrates polynomials exactly") {
    const GaussRule& r = gauss_legendre(8);
    double sum_w = 0.0, sum_x14 = 0.0;
    for (std::size_t i = 0; i < r.nodes.size(); ++i) {
        sum_w += r.weights[i];
        sum_x14 += r.weights[i] * std::pow(r.nodes[i], 14);
    }
    CHECK(sum_w == doctest::Approx(2.0).epsilon(1e-14));
    // GL-8 is exact through degree 15: int_-1^1 x^14 dx = 2/15
    CHECK(sum_x14 == doctest::Approx(2.0 / 15.0).epsilon(1e-13));
}

TEST_CASE("adaptive_integrate handles smooth and peaked integrands") {
    bool ok = true;
    const double v = adaptive_integrate([](double x) { return std::sin(x); }, 0.0,
                                        std::numbers::pi, 1e-12, 0.0, &ok);
    CHECK(ok);
    CHECK(v == doctest::Approx(2.0).epsilon(1e-12));

    // Narrow Lorentzian peak
    const double w = adaptive_integrate(
        [](double x) { return 1e-3 / (x * x + 1e-6); }, -1.0, 1.0, 1e-11, 0.0, &ok);
    CHECK(ok);
    CHECK(w == doctest::Approx(2.0 * std::atan(1000.0)).epsilon(1e-10));
}

TEST_CASE("integrate_decaying_tail matches closed forms") {
    bool ok = true;
    // int_0^inf e^-y / (1+y^2) dy has no elementary form; cross-check against
    // a dense adaptive integral on a finite window instead.
    const double direct = adaptive_integrate(
        [](double y) { return std::exp(-y) / (1.0 + y * y); }, 0.0, 60.0, 1e-13,
        0.0, &ok);
    const double tail = integrate_decaying_tail(
        [](double y) { return std::exp(-y) / (1.0 + y * y); }, 1.0, 1e-12, &ok);
    CHECK(ok);
    CHECK(tail == doctest::Approx(direct).epsilon(1e-10));

    // Pure algebraic decay 1/(1+y)^2 -> 1
    const double alg = integrate_decaying_tail(
        [](double y) { return 1.0 / ((1.0 + y) * (1.0 + y)); }, 1.0, 1e-11, &ok);
    CHECK(ok);
    CHECK(alg == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("monotone cubic interpolation") {
    std::vector<double> x, y;
    for (int i = 0; i <= 20; ++i) {
        x.push_back(0.1 * i);
        y.push_back(std::tanh(x.back()));  // monotone
    }
    MonotoneCubic f(x, y);

    SUBCASE("reproduces nodes and stays monotone") {
        CHECK(f(0.5) == doctest::Approx(std::tanh(0.5)).epsilon(1e-5));
        double prev = f(0.0);
        for (double t = 0.01; t <= 2.0; t += 0.01) {
            const double v = f(t);
            CHECK(v >= prev - 1e-14);
            prev = v;
        }
    }
    SUBCASE("out of range throws") {
        CHECK_THROWS_AS(f(-0.1), RangeError);
        CHECK_THROWS_AS(f(2.1), RangeError);
    }
    SUBCASE("rejects non-increasing grids") {
        CHECK_THROWS_AS(MonotoneCubic({0.0, 0.0, 1.0}, {0.0, 1.0, 2.0}),
                        std::invalid_argument);
    }
}
