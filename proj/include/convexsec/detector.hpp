#pragma once

// Finite-h parabola tests.
//
//   (C) S = (4/3) * area(ABP), i.e. S = (2/3) h L
//   (D) for graphs: the centroid lies on PV with PG = (3/5) PV, V = (b, c + w h)
//   (E) d(h) = (3/5) h
//
// A parabola satisfies all three at every P and h; (C) and (E) are
// rotation-invariant, (D) additionally requires the axis to be vertical.

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "convexsec/curve.hpp"
#include "convexsec/error.hpp"
#include "convexsec/expression.hpp"
#include "convexsec/frame.hpp"
#include "convexsec/section.hpp"

namespace convexsec {

inline constexpr double kCentroidRatio = 3.0 / 5.0;
inline constexpr double kAreaRatio = 4.0 / 3.0;
inline constexpr double kDefaultThreshold = 1e-6;

struct GridPoint {
    double u = 0.0;
    double h = 0.0;
};

using Grid = std::vector<GridPoint>;

/// h in {0.025, 0.05, 0.1, 0.2} / kappa(P) at each point; the curve's
/// default points when `points` is empty.
inline Grid default_grid(const Curve& curve, std::span<const double> points = {}) {
    if (points.empty()) points = curve.default_points();
    Grid grid;
    for (double u : points) {
        const double k = curve.curvature(u);
        for (double scale : {0.025, 0.05, 0.1, 0.2}) grid.push_back({u, scale / k});
    }
    return grid;
}

struct ConditionResiduals {
    double cond_C = 0.0;
    double cond_D_axis = 0.0;
    double cond_D_ratio = 0.0;
    double cond_E = 0.0;
};

/// Parabola through P = (b, c) with slope alpha there, chart coefficient a
/// (curvature 2a at P) and vertical axis:
///   g(u) = a w^3 (u - b)^2 + alpha (u - b) + c.
struct ParabolaCoefficients {
    double a = 0.0;
    double alpha = 0.0;
    double b = 0.0;
    double c = 0.0;
    double w = 1.0;

    double leading() const { return a * w * w * w; }

    double operator()(double u) const {
        const double t = u - b;
        return leading() * t * t + alpha * t + c;
    }

    /// Graph expression in `u`, printed losslessly.
    std::string expression() const {
        return format_number(leading()) + " * (u - " + format_number(b) + ")^2 + " + format_number(alpha) +
               " * (u - " + format_number(b) + ") + " + format_number(c);
    }

    /// The same parabola in the chart at P:
    ///   f(x) = (2a alpha x + 1 - sqrt(4 a alpha x + 1)) / (2 a alpha^2),  or a x^2 when alpha = 0.
    /// Evaluated in the cancellation-free form 2 a x^2 / (1 + z/2 + sqrt(1 + z)), z = 4 a alpha x.
    double chart_function(double x) const {
        const double z = 4.0 * a * alpha * x;
        if (!(1.0 + z > 0.0)) {
            throw GeometryError("x=" + format_number(x) + " outside the chart parabola's graph domain");
        }
        return 2.0 * a * x * x / (1.0 + 0.5 * z + std::sqrt(1.0 + z));
    }

    /// Implicit chart conic A x^2 + B xy + C y^2 + D x + E y + F = 0:
    ///   a x^2 - 2 a alpha x y + a alpha^2 y^2 - y = 0.
    std::array<double, 6> chart_conic() const { return {a, -2.0 * a * alpha, a * alpha * alpha, 0.0, -1.0, 0.0}; }
};

/// The vertical-axis parabola osculating the curve at fp.
inline ParabolaCoefficients reconstruct_parabola(const FramedPoint& fp) {
    return {0.5 * fp.kappa, fp.alpha, fp.b, fp.c, fp.w};
}

struct DetectionReport {
    ConditionResiduals residuals;
    bool parabola = false;
    Grid grid;
    double threshold = kDefaultThreshold;
    std::optional<ParabolaCoefficients> reconstruction;
    /// True when the reconstruction reproduces the curve: condition (D) held
    /// on the grid, so the parabola's axis is vertical.
    bool vertical_axis = false;
};

struct GridSection {
    FramedPoint frame;
    Section section;
};

inline std::vector<GridSection> evaluate_grid(const Curve& curve, const Grid& grid) {
    std::vector<GridSection> out;
    out.reserve(grid.size());
    for (const GridPoint& g : grid) {
        FramedPoint fp = frame_at(curve, g.u);
        Section sec = compute_section(fp, g.h);
        out.push_back({std::move(fp), std::move(sec)});
    }
    return out;
}

inline double residual_E(const Section& s) { return std::abs(s.d / s.h - kCentroidRatio); }

inline double residual_C(const Section& s) {
    return std::abs(s.S / triangle_area(s) - kAreaRatio) / kAreaRatio;
}

struct AxisResiduals {
    double axis = 0.0;
    double ratio = 0.0;
};

inline AxisResiduals residual_D(const FramedPoint& fp, const Section& s) {
    const double pv = fp.w * s.h;
    const double pg = std::hypot(s.centroid_world.u - fp.b, s.centroid_world.v - fp.c);
    return {std::abs(s.centroid_world.u - fp.b) / pv, std::abs(pg / pv - kCentroidRatio)};
}

namespace detail {

inline ConditionResiduals residuals_of(const std::vector<GridSection>& sections) {
    ConditionResiduals r;
    for (const GridSection& gs : sections) {
        r.cond_C = std::max(r.cond_C, residual_C(gs.section));
        r.cond_E = std::max(r.cond_E, residual_E(gs.section));
        const AxisResiduals d = residual_D(gs.frame, gs.section);
        r.cond_D_axis = std::max(r.cond_D_axis, d.axis);
        r.cond_D_ratio = std::max(r.cond_D_ratio, d.ratio);
    }
    return r;
}

}  // namespace detail

/// max |d/h - 3/5| over the grid.
inline double check_condition_E(const Curve& curve, const Grid& grid) {
    return detail::residuals_of(evaluate_grid(curve, grid)).cond_E;
}

/// max |S / area(ABP) - 4/3| / (4/3) over the grid.
inline double check_condition_C(const Curve& curve, const Grid& grid) {
    return detail::residuals_of(evaluate_grid(curve, grid)).cond_C;
}

/// (max |G_u - b| / (w h), max | |PG|/|PV| - 3/5 |) over the grid.
inline AxisResiduals check_condition_D(const Curve& curve, const Grid& grid) {
    const ConditionResiduals r = detail::residuals_of(evaluate_grid(curve, grid));
    return {r.cond_D_axis, r.cond_D_ratio};
}

inline DetectionReport classify(const Curve& curve, const Grid& grid, double threshold = kDefaultThreshold) {
    if (grid.empty()) {
        throw SpecError("detection grid is empty");
    }
    if (!(threshold > 0.0)) {
        throw SpecError("threshold must be positive");
    }
    std::vector<double> points;
    for (const GridPoint& g : grid) {
        if (std::find(points.begin(), points.end(), g.u) == points.end()) points.push_back(g.u);
    }
    for (double u : points) {
        std::set<double> hs;
        for (const GridPoint& g : grid) {
            if (g.u == u) hs.insert(g.h);
        }
        if (hs.size() < 3) {
            throw SpecError("detection grid needs at least 3 distinct h at u=" + format_number(u));
        }
    }

    const std::vector<GridSection> sections = evaluate_grid(curve, grid);
    DetectionReport report;
    report.grid = grid;
    report.threshold = threshold;
    report.residuals = detail::residuals_of(sections);
    report.parabola = report.residuals.cond_E <= threshold && report.residuals.cond_C <= threshold;
    if (report.parabola) {
        report.reconstruction = reconstruct_parabola(sections.front().frame);
        report.vertical_axis =
            report.residuals.cond_D_axis <= threshold && report.residuals.cond_D_ratio <= threshold;
    }
    return report;
}

}  // namespace convexsec
