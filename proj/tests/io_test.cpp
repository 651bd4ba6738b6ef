#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <string>

#include "convexsec/io.hpp"

using namespace convexsec;

TEST(CurveJson, Builtin) {
    const Curve c = curve_from_json(json::parse(R"({"kind":"builtin","name":"circle","param":2.0})"));
    EXPECT_EQ(c.name(), "circle");
    EXPECT_DOUBLE_EQ(c.curvature(0.0), 0.5);
    const Curve d = curve_from_json(json::parse(R"({"kind":"builtin","name":"ellipse","param":null})"));
    EXPECT_DOUBLE_EQ(d.curvature(0.0), 0.25);
}

TEST(CurveJson, Graph) {
    const Curve c = load_curve(R"(  {"kind":"graph","expr":"u^2 + u","domain":[-2,2]})");
    EXPECT_EQ(c.kind(), CurveKind::Graph);
    EXPECT_DOUBLE_EQ(c.value(2.0 - 1e-9), (2.0 - 1e-9) * (2.0 - 1e-9) + 2.0 - 1e-9);
}

TEST(CurveJson, Errors) {
    EXPECT_THROW(load_curve("{not json"), SpecError);
    EXPECT_THROW(load_curve(R"({"kind":"spline"})"), SpecError);
    EXPECT_THROW(load_curve(R"({"kind":"graph","expr":"u^2"})"), SpecError);
    EXPECT_THROW(load_curve(R"({"kind":"graph","expr":"u^2","domain":[1]})"), SpecError);
    EXPECT_THROW(load_curve(R"({"kind":"graph","expr":"u^^2","domain":[-1,1]})"), ParseError);
    EXPECT_THROW(load_curve(R"({"kind":"builtin","name":7})"), SpecError);
    EXPECT_THROW(load_curve("/nonexistent/curve.json"), SpecError);
    EXPECT_THROW(load_curve("   "), SpecError);
    EXPECT_THROW(curve_from_json(json::array()), SpecError);
}

TEST(CurveJson, FromFile) {
    const std::string path = ::testing::TempDir() + "convexsec_io_curve.json";
    {
        std::ofstream out(path);
        out << R"({"kind":"builtin","name":"catenary"})";
    }
    EXPECT_EQ(load_curve(path).name(), "catenary");
    std::remove(path.c_str());
}

TEST(ReportJson, SectionFields) {
    const Section s = compute_section(frame_at(Curve::builtin("parabola"), 0.0), 1.0);
    const json j = to_json(s);
    for (const char* key : {"h", "x1", "x2", "L", "S", "R", "phi", "psi", "phi2", "triangle", "centroid_chart",
                            "centroid_world", "d", "d_over_h", "V_world", "P"}) {
        EXPECT_TRUE(j.contains(key)) << key;
    }
    EXPECT_NEAR(j["S"].get<double>(), 4.0 / 3.0, 1e-13);
    EXPECT_NEAR(j["d"].get<double>(), 0.6, 1e-13);
    // serialized doubles round-trip exactly
    EXPECT_EQ(json::parse(j.dump())["S"].get<double>(), s.S);
}

TEST(ReportJson, Detection) {
    const Curve c = Curve::builtin("parabola");
    const json j = to_json(classify(c, default_grid(c)));
    EXPECT_EQ(j["verdict"], "parabola");
    EXPECT_EQ(j["grid"].size(), 20u);
    EXPECT_TRUE(j["reconstruction"].is_object());
    EXPECT_EQ(j["reconstruction"]["vertical_axis"], true);
    for (const char* key : {"cond_C", "cond_D_axis", "cond_D_ratio", "cond_E"}) {
        EXPECT_TRUE(j["residuals"].contains(key));
    }
    const Curve circle = Curve::builtin("circle");
    const json k = to_json(classify(circle, default_grid(circle)));
    EXPECT_EQ(k["verdict"], "not-parabola");
    EXPECT_TRUE(k["reconstruction"].is_null());
}

TEST(ReportJson, LimitEstimate) {
    const json j = to_json(centroid_ratio_limit(frame_at(Curve::builtin("circle"), 0.0)));
    EXPECT_EQ(j["samples"].size(), 8u);
    EXPECT_EQ(j["model_order"], 4);
    EXPECT_TRUE(j["model"] == "integer_h" || j["model"] == "sqrt_h");
}
