#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "convexsec/quadrature.hpp"

using namespace convexsec;

TEST(AdaptiveSimpson, CubicIsExact) {
    auto f = [](double x) { return 3.0 * x * x * x - x + 2.0; };
    // antiderivative 3/4 x^4 - x^2/2 + 2x on [-1, 2]
    const double want = (0.75 * 16 - 2 + 4) - (0.75 - 0.5 - 2);
    EXPECT_NEAR(adaptive_simpson(f, -1.0, 2.0, 1e-14), want, 1e-12);
}

TEST(AdaptiveSimpson, SmoothFunctions) {
    EXPECT_NEAR(adaptive_simpson([](double x) { return std::sin(x); }, 0.0, std::numbers::pi, 1e-13), 2.0, 1e-12);
    EXPECT_NEAR(adaptive_simpson([](double x) { return std::exp(x); }, 0.0, 1.0, 1e-13), std::numbers::e - 1.0,
                1e-12);
}

TEST(AdaptiveSimpson, SharpPeak) {
    const double got = adaptive_simpson([](double x) { return 1.0 / (1.0 + 100.0 * x * x); }, -1.0, 1.0, 1e-13);
    EXPECT_NEAR(got, 0.2 * std::atan(10.0), 1e-12);
}

TEST(AdaptiveSimpson, VectorComponentsIndependentTolerances) {
    auto f = [](double x) { return Values<3>{1.0, x, 1e6 * std::cos(x)}; };
    const Values<3> r = adaptive_simpson<3>(f, 0.0, 1.0, Values<3>{1e-14, 1e-14, 1e-8});
    EXPECT_NEAR(r[0], 1.0, 1e-14);
    EXPECT_NEAR(r[1], 0.5, 1e-14);
    EXPECT_NEAR(r[2], 1e6 * std::sin(1.0), 1e-7);
}

TEST(AdaptiveSimpson, ReversedAndEmptyInterval) {
    auto f = [](double x) { return x; };
    EXPECT_NEAR(adaptive_simpson(f, 1.0, 0.0, 1e-14), -0.5, 1e-14);
    EXPECT_EQ(adaptive_simpson(f, 0.5, 0.5, 1e-14), 0.0);
}

TEST(AdaptiveSimpson, ThrowsWhenDepthExhausted) {
    SimpsonOptions opt;
    opt.max_depth = 6;
    auto f = [](double x) { return std::sin(200.0 * x); };
    EXPECT_THROW(adaptive_simpson(f, 0.0, 3.0, 1e-14, opt), GeometryError);
}
