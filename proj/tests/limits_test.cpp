#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "convexsec/limits.hpp"
#include "oracles.hpp"

using namespace convexsec;

namespace {

const std::vector<std::string> kBuiltins = {"parabola", "tilted_parabola", "circle", "ellipse", "catenary", "quartic"};

}  // namespace

TEST(Extrapolate, Constant) {
    const LimitEstimate e = extrapolate([](double) { return 0.6; }, 0.1, 8);
    EXPECT_NEAR(e.value, 0.6, 1e-14);
    EXPECT_LT(e.error_est, 1e-14);
    EXPECT_EQ(e.samples.size(), 8u);
    EXPECT_EQ(e.model_order, 4);
}

TEST(Extrapolate, SqrtModelExactMatch) {
    const LimitEstimate e = extrapolate([](double h) { return 1.0 + std::sqrt(h); }, 0.1, 6);
    EXPECT_NEAR(e.value, 1.0, 1e-10);
    EXPECT_EQ(e.model, LimitModel::SqrtH);
}

TEST(Extrapolate, IntegerModelPreferredForEvenExpansions) {
    const LimitEstimate e = extrapolate([](double h) { return 2.0 - h + 3.0 * h * h - h * h * h; }, 0.1, 8);
    EXPECT_EQ(e.model, LimitModel::IntegerH);
    EXPECT_NEAR(e.value, 2.0, 1e-8);
}

TEST(Extrapolate, ForcedModels) {
    auto f = [](double h) { return 1.0 + std::sqrt(h); };
    EXPECT_EQ(extrapolate(f, 0.1, 6, LimitModel::SqrtH).model, LimitModel::SqrtH);
    EXPECT_EQ(extrapolate(f, 0.1, 6, LimitModel::IntegerH).model, LimitModel::IntegerH);
}

TEST(Extrapolate, SamplesHalveEachStep) {
    const LimitEstimate e = extrapolate([](double h) { return h; }, 0.4, 5);
    for (std::size_t k = 0; k < e.samples.size(); ++k) {
        EXPECT_DOUBLE_EQ(e.samples[k].h, std::ldexp(0.4, -static_cast<int>(k)));
        EXPECT_DOUBLE_EQ(e.samples[k].ratio, e.samples[k].h);
    }
}

TEST(Extrapolate, Errors) {
    auto f = [](double) { return 1.0; };
    EXPECT_THROW(extrapolate(f, 0.1, 3), SpecError);
    EXPECT_THROW(extrapolate(f, 0.0, 8), SpecError);
    EXPECT_THROW(extrapolate(f, -0.1, 8), SpecError);
    EXPECT_THROW(extrapolate([](double) -> double { throw GeometryError("boom"); }, 0.1, 8), GeometryError);
    EXPECT_THROW(extrapolate([](double) { return std::nan(""); }, 0.1, 8), GeometryError);
    // repeated abscissae make the design matrix singular
    const std::vector<LimitSample> flat(6, LimitSample{0.1, 1.0});
    try {
        detail::fit_limit(flat, LimitModel::IntegerH);
        FAIL() << "expected an ill-conditioned fit";
    } catch (const GeometryError& e) {
        EXPECT_NE(std::string(e.what()).find("ill-conditioned"), std::string::npos);
    }
}

TEST(CurvatureFromChords, Examples) {
    const LimitEstimate par = curvature_from_chords(frame_at(Curve::builtin("parabola"), 0.0));
    EXPECT_NEAR(par.value, 2.0, 1e-10);
    for (const LimitSample& s : par.samples) EXPECT_NEAR(s.ratio, 2.0, 1e-12);
    EXPECT_NEAR(curvature_from_chords(frame_at(Curve::builtin("circle"), 0.0)).value, 1.0, 1e-6);
    EXPECT_NEAR(curvature_from_chords(frame_at(Curve::builtin("ellipse"), 0.0)).value, 0.25, 1e-5);
}

TEST(CurvatureFromChords, MatchesAnalyticCurvature) {
    for (const auto& name : kBuiltins) {
        const Curve c = Curve::builtin(name);
        for (double u : c.default_points()) {
            const FramedPoint fp = frame_at(c, u);
            EXPECT_LT(oracle::relative_error(curvature_from_chords(fp).value, fp.kappa), 1e-4) << name << " " << u;
        }
    }
}

TEST(ChordConstant, Examples) {
    EXPECT_NEAR(chord_constant(frame_at(Curve::builtin("parabola"), 0.0)).value, 2.0, 1e-10);
    EXPECT_NEAR(chord_constant(frame_at(Curve::builtin("circle"), 0.0)).value, 2.0 * std::sqrt(2.0), 1e-5);
    EXPECT_NEAR(chord_constant(frame_at(Curve::builtin("parabola", 4.0), 0.0)).value, 1.0, 1e-10);
}

TEST(CentroidRatio, Examples) {
    const LimitEstimate par = centroid_ratio_limit(frame_at(Curve::builtin("tilted_parabola", 3.0), 0.1));
    for (const LimitSample& s : par.samples) EXPECT_NEAR(s.ratio, 0.6, 1e-11);
    const FramedPoint circle = frame_at(Curve::builtin("circle"), 0.0);
    EXPECT_NEAR(centroid_ratio_limit(circle).value, 0.6, 1e-5);
    EXPECT_NEAR(centroid_ratio_limit(circle, 0.2, 8).value, 0.6, 1e-5);
    EXPECT_NEAR(centroid_ratio_limit(frame_at(Curve::builtin("catenary"), 0.0)).value, 0.6, 1e-5);
}

TEST(CentroidRatio, UniversalOverRandomPoints) {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (const auto& name : kBuiltins) {
        const Curve c = Curve::builtin(name);
        const Interval d = c.domain();
        for (int i = 0; i < 5; ++i) {
            const double u = d.mid() + 0.3 * d.half_width() * unit(rng);
            EXPECT_NEAR(centroid_ratio_limit(frame_at(c, u)).value, 0.6, 1e-4) << name << " " << u;
        }
    }
}

TEST(MomentConstants, HalfParabolaHasUnitCurvature) {
    const MomentLimits m = moment_constants(frame_at(Curve::builtin("parabola", 0.5), 0.0));
    const double r2 = std::sqrt(2.0);
    EXPECT_NEAR(m.phi.value, 4.0 * r2 / 5.0, 1e-9);
    EXPECT_NEAR(m.area.value, 4.0 * r2 / 3.0, 1e-9);
    EXPECT_NEAR(m.phi2.value, r2 / 5.0, 1e-9);
    EXPECT_NEAR(m.phi1.value, r2, 1e-9);
    EXPECT_NEAR(m.phi.value, 1.1313708, 1e-7);
    EXPECT_NEAR(m.area.value, 1.8856181, 1e-7);
    EXPECT_NEAR(m.phi2.value, 0.2828427, 1e-7);
}

TEST(MomentConstants, UnitCircleMatchesParabola) {
    const MomentLimits m = moment_constants(frame_at(Curve::builtin("circle"), 0.0));
    const double r2 = std::sqrt(2.0);
    EXPECT_LT(oracle::relative_error(m.phi.value, 4.0 * r2 / 5.0), 1e-4);
    EXPECT_LT(oracle::relative_error(m.area.value, 4.0 * r2 / 3.0), 1e-4);
    EXPECT_LT(oracle::relative_error(m.phi2.value, r2 / 5.0), 1e-4);
}

TEST(MomentConstants, ScaleAsInverseRootCurvature) {
    const MomentLimits one = moment_constants(frame_at(Curve::builtin("circle", 1.0), 0.0));
    const MomentLimits two = moment_constants(frame_at(Curve::builtin("circle", 0.5), 0.0));
    const double r2 = std::sqrt(2.0);
    EXPECT_LT(oracle::relative_error(two.phi.value, one.phi.value / r2), 1e-5);
    EXPECT_LT(oracle::relative_error(two.area.value, one.area.value / r2), 1e-5);
    EXPECT_LT(oracle::relative_error(two.phi2.value, one.phi2.value / r2), 1e-5);
}

TEST(MomentConstants, InternalConsistency) {
    for (const auto& name : kBuiltins) {
        const Curve c = Curve::builtin(name);
        const MomentLimits m = moment_constants(frame_at(c, c.default_points()[1]));
        EXPECT_LT(oracle::relative_error(m.phi.value, 0.6 * m.area.value), 1e-6) << name;
        EXPECT_LT(oracle::relative_error(m.phi1.value - m.phi2.value, m.phi.value), 1e-6) << name;
    }
}
