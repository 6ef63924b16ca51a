#include "cavity/quadrature.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace cavity;

TEST(Quadrature, Polynomials) {
    const auto r = integrate([](double x) { return 3 * x * x - 2 * x + 1; }, -1.0, 2.0);
    EXPECT_NEAR(r.value, 9.0 - 3.0 + 3.0, 1e-13);
    EXPECT_LE(r.error, 1e-10 * r.l1);
}

TEST(Quadrature, BreakpointsHandleKinks) {
    const auto r = integrate([](double x) { return std::abs(x - 0.3); }, 0.0, 1.0, {0.3});
    EXPECT_NEAR(r.value, 0.5 * (0.09 + 0.49), 1e-14);
    EXPECT_NEAR(r.l1, r.value, 1e-14);
}

TEST(Quadrature, PeakedIntegrand) {
    // Lorentzian of width 1e-4: pi / 2 + atan terms
    const double w = 1e-4;
    const auto r = integrate([w](double x) { return w / (x * x + w * w); }, -1.0, 1.0, {}, 1e-10, 0.0, 20);
    EXPECT_NEAR(r.value, 2.0 * std::atan(1.0 / w), 1e-8);
}

TEST(Quadrature, ReportsFailure) {
    auto wild = [](double x) { return std::sin(1.0 / (x + 1e-12)); };
    EXPECT_THROW(integrate(wild, 0.0, 1.0, {}, 1e-14, 0.0, 3), QuadratureError);
    EXPECT_NEAR(integrate([](double) { return 1.0; }, 2.0, 2.0).value, 0.0, 0.0);
}
