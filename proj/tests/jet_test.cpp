#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "convexsec/jet.hpp"

using convexsec::GeometryError;
using convexsec::Jet2;

namespace {

void expect_jet(const Jet2& j, double v, double d1, double d2, double tol = 1e-13) {
    EXPECT_NEAR(j.v, v, tol);
    EXPECT_NEAR(j.d1, d1, tol);
    EXPECT_NEAR(j.d2, d2, tol);
}

}  // namespace

TEST(Jet2, ProductAndQuotientRules) {
    const Jet2 x = Jet2::variable(1.5);
    // x^3 -> (3.375, 6.75, 9)
    expect_jet(x * x * x, 3.375, 6.75, 9.0);
    // 1/x -> (1/x, -1/x^2, 2/x^3)
    expect_jet(1.0 / x, 1.0 / 1.5, -1.0 / 2.25, 2.0 / 3.375);
    // (x + 1)/(x - 1) at 1.5 = 5; d1 = -2/(x-1)^2 = -8; d2 = 4/(x-1)^3 = 32
    expect_jet((x + 1.0) / (x - 1.0), 5.0, -8.0, 32.0, 1e-12);
}

TEST(Jet2, ElementaryFunctionsMatchHandDerivatives) {
    const double u = 0.4;
    const Jet2 x = Jet2::variable(u);
    expect_jet(sin(x), std::sin(u), std::cos(u), -std::sin(u));
    expect_jet(cos(x), std::cos(u), -std::sin(u), -std::cos(u));
    expect_jet(exp(2.0 * x), std::exp(0.8), 2.0 * std::exp(0.8), 4.0 * std::exp(0.8));
    expect_jet(log(x), std::log(u), 1.0 / u, -1.0 / (u * u));
    expect_jet(cosh(x), std::cosh(u), std::sinh(u), std::cosh(u));
    // sqrt(1 - x^2): d1 = -x/s, d2 = -1/s^3
    const double s = std::sqrt(1.0 - u * u);
    expect_jet(sqrt(1.0 - x * x), s, -u / s, -1.0 / (s * s * s));
    expect_jet(pow(x, 2.5), std::pow(u, 2.5), 2.5 * std::pow(u, 1.5), 3.75 * std::pow(u, 0.5));
}

TEST(Jet2, IntegerPowersAcceptNegativeBases) {
    const Jet2 x = Jet2::variable(-2.0);
    expect_jet(pow(x, 3.0), -8.0, 12.0, -12.0);
    expect_jet(pow(x, -1.0), -0.5, -0.25, -0.25);
    expect_jet(pow(Jet2::variable(0.0), 2.0), 0.0, 0.0, 2.0);
    expect_jet(pow(Jet2::variable(0.0), 1.0), 0.0, 1.0, 0.0);
}

TEST(Jet2, DomainViolationsThrow) {
    EXPECT_THROW(sqrt(Jet2::variable(-1.0)), GeometryError);
    EXPECT_THROW(sqrt(Jet2::variable(0.0)), GeometryError);
    EXPECT_THROW(log(Jet2::variable(0.0)), GeometryError);
    EXPECT_THROW(Jet2::variable(1.0) / Jet2::constant(0.0), GeometryError);
    EXPECT_THROW(pow(Jet2::variable(-1.0), 0.5), GeometryError);
    EXPECT_THROW(pow(Jet2::variable(0.0), 1.5), GeometryError);
    EXPECT_THROW(exp(Jet2::variable(1000.0)), GeometryError);
}

TEST(Jet2, CompositionMatchesFiniteDifferences) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> dist(0.2, 2.0);
    auto f = [](const Jet2& x) { return sin(x * x) / (1.0 + exp(-x)) + sqrt(x) * log(1.0 + x); };
    for (int i = 0; i < 50; ++i) {
        const double u = dist(rng);
        const Jet2 j = f(Jet2::variable(u));
        const double dlt = 1e-5;
        const double fd1 = (f(Jet2::constant(u + dlt)).v - f(Jet2::constant(u - dlt)).v) / (2 * dlt);
        const double fd2 = (f(Jet2::variable(u + dlt)).d1 - f(Jet2::variable(u - dlt)).d1) / (2 * dlt);
        EXPECT_NEAR(j.d1, fd1, 1e-6 * std::max(1.0, std::abs(fd1)));
        EXPECT_NEAR(j.d2, fd2, 1e-6 * std::max(1.0, std::abs(fd2)));
    }
}
