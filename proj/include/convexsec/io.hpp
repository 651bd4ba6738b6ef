#pragma once

// JSON bindings: curve specs in, reports out.
//
//   {"kind":"builtin","name":"parabola","param":1.0}
//   {"kind":"graph","expr":"u^2 + u","domain":[-2.0,2.0]}

#include <nlohmann/json.hpp>

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>

#include "convexsec/curve.hpp"
#include "convexsec/detector.hpp"
#include "convexsec/error.hpp"
#include "convexsec/expression.hpp"
#include "convexsec/limits.hpp"
#include "convexsec/section.hpp"

namespace convexsec {

using json = nlohmann::json;

inline Curve curve_from_json(const json& spec) {
    try {
        if (!spec.is_object()) throw SpecError("curve spec must be a JSON object");
        const std::string kind = spec.at("kind").get<std::string>();
        if (kind == "builtin") {
            std::optional<double> param;
            if (spec.contains("param") && !spec.at("param").is_null()) param = spec.at("param").get<double>();
            return Curve::builtin(spec.at("name").get<std::string>(), param);
        }
        if (kind == "graph") {
            const json& dom = spec.at("domain");
            if (!dom.is_array() || dom.size() != 2) throw SpecError("graph domain must be [lo, hi]");
            return Curve::graph(parse_expression(spec.at("expr").get<std::string>()),
                                {dom[0].get<double>(), dom[1].get<double>()});
        }
        throw SpecError("unknown curve kind '" + kind + "'");
    } catch (const json::exception& e) {
        throw SpecError(std::string("invalid curve spec: ") + e.what());
    }
}

/// Inline JSON when the text starts with '{', otherwise a path to a JSON file.
inline Curve load_curve(std::string_view path_or_inline) {
    std::string text(path_or_inline);
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) throw SpecError("empty curve spec");
    if (text[first] != '{') {
        std::ifstream in(text);
        if (!in) throw SpecError("cannot open curve spec '" + text + "'");
        std::stringstream buf;
        buf << in.rdbuf();
        text = buf.str();
    }
    json spec;
    try {
        spec = json::parse(text);
    } catch (const json::parse_error& e) {
        throw SpecError(std::string("curve spec is not valid JSON: ") + e.what());
    }
    return curve_from_json(spec);
}

inline json to_json(Point p) { return json::array({p.u, p.v}); }
inline json to_json(ChartPoint p) { return json::array({p.x, p.y}); }

inline json to_json(const Section& s) {
    return {
        {"h", s.h},
        {"x1", s.x1},
        {"x2", s.x2},
        {"L", s.L},
        {"S", s.S},
        {"R", s.R},
        {"phi", s.phi},
        {"psi", s.psi},
        {"phi2", s.phi2},
        {"triangle", triangle_area(s)},
        {"centroid_chart", to_json(s.centroid_chart)},
        {"centroid_world", to_json(s.centroid_world)},
        {"d", s.d},
        {"d_over_h", s.d / s.h},
        {"V_world", to_json(s.V_world)},
        {"P", to_json(s.P)},
    };
}

inline json to_json(const FramedPoint& fp) {
    return {{"b", fp.b},         {"c", fp.c},  {"theta", fp.theta},
            {"alpha", fp.alpha}, {"w", fp.w},  {"kappa", fp.kappa},
            {"tangent", json::array({fp.tangent.u, fp.tangent.v})},
            {"normal", json::array({fp.normal.u, fp.normal.v})}};
}

inline json to_json(const LimitEstimate& e) {
    json samples = json::array();
    for (const LimitSample& s : e.samples) samples.push_back(json::array({s.h, s.ratio}));
    return {{"value", e.value}, {"error_est", e.error_est}, {"model_order", e.model_order},
            {"model", model_name(e.model)}, {"samples", samples}};
}

inline json to_json(const ParabolaCoefficients& p) {
    return {{"a", p.a}, {"alpha", p.alpha}, {"b", p.b}, {"c", p.c}, {"w", p.w}};
}

inline json to_json(const DetectionReport& r) {
    json grid = json::array();
    for (const GridPoint& g : r.grid) grid.push_back({{"u", g.u}, {"h", g.h}});
    json out = {
        {"verdict", r.parabola ? "parabola" : "not-parabola"},
        {"residuals",
         {{"cond_C", r.residuals.cond_C},
          {"cond_D_axis", r.residuals.cond_D_axis},
          {"cond_D_ratio", r.residuals.cond_D_ratio},
          {"cond_E", r.residuals.cond_E}}},
        {"grid", grid},
        {"threshold", r.threshold},
        {"scope", "verdict covers the tested grid only"},
    };
    if (r.reconstruction) {
        json rec = to_json(*r.reconstruction);
        rec["vertical_axis"] = r.vertical_axis;
        out["reconstruction"] = rec;
    } else {
        out["reconstruction"] = nullptr;
    }
    return out;
}

}  // namespace convexsec
