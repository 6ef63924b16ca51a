#include "cavity/catalog.hpp"
#include "cavity/moore.hpp"

#include "random_models.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace cavity;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST(Catalog, LinearFiniteParameters) {
    const CavityModel m = make_linear_finite(2, kPi / 4);
    EXPECT_EQ(m.family(), Family::linear_finite);
    EXPECT_DOUBLE_EQ(m.length(), 2.25 * kPi);
    EXPECT_DOUBLE_EQ(m.omega_ratio(), 4.5);
    EXPECT_NEAR(*m.v0(), 1.0, 1e-15);
    EXPECT_NEAR(m.vmax(), std::sqrt(0.5), 1e-15);
    EXPECT_EQ(m.map_class().kind, MapKind::parabolic);
    // peak-to-peak excursion 2 asin(vmax) / omega
    EXPECT_NEAR(m.amplitude(), 2.0 * std::asin(std::sqrt(0.5)) / 2.0, 1e-15);
}

TEST(Catalog, OddResonanceHasNoFiniteV0) {
    const CavityModel m = make_linear_odd(2, 0.3);
    EXPECT_FALSE(m.v0().has_value());
    EXPECT_DOUBLE_EQ(m.length(), 1.5 * kPi);
    EXPECT_DOUBLE_EQ(m.omega_ratio(), 3.0);
}

TEST(Catalog, InversionIsElliptic) {
    const CavityModel m = make_inversion(1, kPi / 6);
    EXPECT_EQ(m.map_class().kind, MapKind::elliptic);
    EXPECT_NEAR(m.vmax(), 0.5, 1e-15);
    EXPECT_TRUE(make_inversion(1, kPi / 4).degenerate_static());
}

TEST(Catalog, HomographicEigenvalues) {
    const CavityModel m = make_homographic(1, 1.0, 2.0);
    const MapClass& c = m.map_class();
    ASSERT_EQ(c.kind, MapKind::hyperbolic);
    // lambda = -v1 +- sqrt(v0 (2 v1 - v0)), product (v0 - v1)^2
    const double lo = std::min(c.lambda1.real(), c.lambda2.real());
    const double hi = std::max(c.lambda1.real(), c.lambda2.real());
    EXPECT_NEAR(lo, -2.0 - std::sqrt(3.0), 1e-14);
    EXPECT_NEAR(hi, -2.0 + std::sqrt(3.0), 1e-14);
    EXPECT_NEAR(m.delta1().det(), 1.0, 1e-14);
    // sewing: Delta1(v0) = -v0
    EXPECT_NEAR(m.delta1()(1.0), -1.0, 1e-15);
}

TEST(Catalog, HomographicWithZeroV1IsInversion) {
    const CavityModel m = make_homographic(1, 0.5, 0.0);
    EXPECT_EQ(m.family(), Family::inversion);
    EXPECT_NEAR(m.theta(), std::atan(0.5), 1e-15);
}

TEST(Catalog, ParabolicBoundary) {
    // v0 = 2 v1 makes the discriminant vanish
    EXPECT_EQ(make_homographic(1, 1.0, 0.5).map_class().kind, MapKind::parabolic);
    EXPECT_EQ(make_homographic(1, -1.0, 1.0).map_class().kind, MapKind::elliptic);
}

TEST(Catalog, RejectsBadParameters) {
    EXPECT_THROW(make_linear_finite(0, 0.3), std::invalid_argument);
    EXPECT_THROW(make_linear_finite(1, 0.0), std::invalid_argument);
    EXPECT_THROW(make_linear_finite(1, 2.0), std::invalid_argument);
    EXPECT_THROW(make_linear_finite(1, 0.3, -1.0), std::invalid_argument);
    EXPECT_THROW(make_inversion(0, -0.3), std::invalid_argument);
    EXPECT_THROW(make_homographic(1, 1.0, 1.0), std::invalid_argument);
    EXPECT_THROW(make_homographic(1, 0.0, 0.0), std::invalid_argument);
    EXPECT_THROW(make_homographic(1, INFINITY, 1.0), std::invalid_argument);
    EXPECT_THROW(make_static(-1.0), std::invalid_argument);
    EXPECT_THROW(family_from_string("cubic"), std::invalid_argument);
}

TEST(Catalog, SpecRoundTrip) {
    for (Family f : {Family::linear_finite, Family::linear_odd, Family::inversion, Family::homographic}) {
        cavity::testing::Rng rng(7 + static_cast<int>(f));
        const CavityModel m = cavity::testing::random_model(rng, f);
        const CavityModel back = make_model(m.spec());
        EXPECT_EQ(back.family(), m.family());
        EXPECT_DOUBLE_EQ(back.length(), m.length());
        EXPECT_TRUE(back.delta1().projectively_equal(m.delta1()));
        EXPECT_EQ(family_from_string(to_string(f)), f);
    }
    ModelSpec missing;
    missing.family = Family::linear_finite;
    missing.M = 2;
    EXPECT_THROW(make_model(missing), std::invalid_argument);
}

TEST(Catalog, WallPathFormula) {
    const CavityModel m = make_linear_finite(2, kPi / 4);
    const MooreEvaluator ev(m);
    const double s = m.swing(), w = m.omega();
    for (double t : {0.0, 0.3, 1.7, 10.0, 55.5}) {
        EXPECT_NEAR(ev.trajectory(t), m.length() + (std::asin(s * std::cos(w * t)) - std::asin(s)) / w, 1e-13);
    }
    EXPECT_DOUBLE_EQ(ev.trajectory(-3.0), m.length());
}

TEST(Validate, CatalogModelsAreAdmissible) {
    cavity::testing::Rng rng(11);
    for (int i = 0; i < 40; ++i) {
        const CavityModel m = cavity::testing::random_model(rng);
        const ValidationReport r = validate(m);
        EXPECT_TRUE(r.admissible()) << to_string(m.family()) << " M = " << m.order() << " theta = " << m.theta();
        EXPECT_GT(r.min_slope, 0.0);
    }
}

TEST(Validate, DetectsWrongMap) {
    const CavityModel m = make_linear_finite(2, kPi / 4);
    const CavityModel bad = m.with_fundamental_map(Homography::translation(-1.5));
    const ValidationReport r = validate(bad);
    EXPECT_FALSE(r.admissible());
    EXPECT_NE(r.find("initial-conditions"), nullptr);
    EXPECT_THROW(validate(m, 1), std::invalid_argument);
}

TEST(Validate, SlopeBoundsOfFiniteFamily) {
    const ValidationReport r = validate(make_linear_finite(2, kPi / 4));
    const double s = std::sqrt(0.5);
    EXPECT_NEAR(r.min_slope, (1 - s) / (1 + s), 1e-9);
    EXPECT_NEAR(r.max_slope, (1 + s) / (1 - s), 1e-9);
    const ValidationReport st = validate(make_static(2.0));
    EXPECT_TRUE(st.admissible());
    EXPECT_NEAR(st.min_slope, 1.0, 1e-12);
}

TEST(Validate, ForgedSpeedViolatesSlopeBound) {
    const ValidationReport r = validate(make_linear_finite(2, kPi / 4).with_vmax(0.1));
    EXPECT_FALSE(r.admissible());
    const CheckResult* lo = r.find("slope-lower-bound");
    ASSERT_NE(lo, nullptr);
    EXPECT_FALSE(lo->passed);
}

TEST(Catalog, InversionRange) {
    // oscillation between L and L + sign(theta) (pi - 4 |theta|) / omega
    const CavityModel m = make_inversion(1, kPi / 6);
    const MooreEvaluator ev(m);
    double lo = 1e300, hi = -1e300;
    for (int i = 0; i <= 20000; ++i) {
        const double L = ev.trajectory(m.period() * i / 20000.0);
        lo = std::min(lo, L), hi = std::max(hi, L);
    }
    EXPECT_NEAR(lo, m.length(), 1e-7);
    EXPECT_NEAR(hi, m.length() + (kPi - 4 * kPi / 6) / m.omega(), 1e-7);
}
