#pragma once

// Chord sections of a convex curve at a framed point P.
//
// In the chart at P the curve is y = f(x) with f(0) = f'(0) = 0. The line
// y = h cuts off the section {(x, y) : f(x) < y < h} over I(h) = (x1, x2).
// With L = x2 - x1 the section quantities are
//
//   S   = int_I (h - f) dx              area
//   phi = 1/2 int_I (h^2 - f^2) dx      first moment about the tangent
//   psi = int_I x (h - f) dx            first moment about the normal
//   phi2 = 1/2 int_I f^2 dx             so that phi = h^2 L / 2 - phi2
//
// and the centroid is (psi / S, phi / S). All integrals are evaluated as
// line integrals along the curve trace parameter (Green's theorem), so they
// stay exact even where a rotated arc folds back over the chart tangent and
// y = f(x) stops being single-valued.

#include <algorithm>
#include <cmath>
#include <concepts>
#include <functional>
#include <string>
#include <utility>

#include "convexsec/curve.hpp"
#include "convexsec/error.hpp"
#include "convexsec/frame.hpp"
#include "convexsec/quadrature.hpp"
#include "convexsec/roots.hpp"

namespace convexsec {

/// Anything that traces a curve through the chart origin with a horizontal
/// tangent there and positive curvature `curvature()` at the origin.
template <class T>
concept ChartTrace = requires(const T& t, double s) {
    { t.sample(s) } -> std::same_as<TraceSample>;
    { t.parameter_range() } -> std::same_as<Interval>;
    { t.curvature() } -> std::convertible_to<double>;
};

/// Chart curve given directly as y = f(x), f evaluated over Jet2.
class PlainChart {
public:
    using Function = std::function<Jet2(const Jet2&)>;

    PlainChart(Function f, Interval domain) : f_(std::move(f)), domain_(domain) {
        if (!domain_.contains(0.0)) {
            throw SpecError("chart domain must contain the origin");
        }
        curvature_ = f_(Jet2::variable(0.0)).d2;
        if (!(curvature_ > 0.0)) {
            throw GeometryError("chart curve must have positive curvature at the origin");
        }
    }

    Interval parameter_range() const { return domain_; }
    double curvature() const { return curvature_; }

    TraceSample sample(double x) const {
        if (!domain_.contains(x)) {
            throw GeometryError("x=" + format_number(x) + " outside chart domain");
        }
        const Jet2 y = f_(Jet2::variable(x));
        if (!y.finite()) {
            throw GeometryError("chart curve is not finite at x=" + format_number(x));
        }
        return {x, 1.0, y.v, y.d1};
    }

private:
    Function f_;
    Interval domain_;
    double curvature_ = 0.0;
};

struct SectionBounds {
    double x1 = 0.0;
    double x2 = 0.0;
    double s1 = 0.0;  // trace parameters of the chord endpoints
    double s2 = 0.0;
};

struct Section {
    double h = 0.0;
    double x1 = 0.0;
    double x2 = 0.0;
    double L = 0.0;
    double S = 0.0;
    double R = 0.0;
    double phi = 0.0;
    double psi = 0.0;
    double phi2 = 0.0;
    ChartPoint centroid_chart;
    Point centroid_world;
    double d = 0.0;
    Point V_world;
    Point P;
};

inline void require_positive_offset(double h) {
    if (!(h > 0.0) || !std::isfinite(h)) {
        throw SpecError("h must be positive (got " + format_number(h) + ")");
    }
}

/// Endpoints of the connected component of {f < h} that contains the origin.
template <ChartTrace T>
SectionBounds section_bounds(const T& trace, double h) {
    require_positive_offset(h);
    const double kappa = trace.curvature();
    const TraceSample origin = trace.sample(0.0);
    // step in x is h/kappa, widened to a quarter of the osculating half chord
    // for small h so the march needs only a few steps
    const double step_x = std::max(h / kappa, 0.25 * std::sqrt(2.0 * h / kappa));
    const double step = step_x / origin.dx;

    const Interval range = trace.parameter_range();
    const double inset = 1e-12 * (range.hi - range.lo);
    const double ftol = 1e-12 * std::max(1.0, h);

    auto level = [&](double s) { return trace.sample(s).y - h; };
    auto level_df = [&](double s) {
        const TraceSample t = trace.sample(s);
        return std::pair{t.y - h, t.dy};
    };

    auto find = [&](double direction, double limit) {
        std::pair<double, double> bracket;
        try {
            bracket = bracket_outward(level, 0.0, direction * step, limit);
        } catch (const GeometryError&) {
            throw GeometryError("h=" + format_number(h) + " too large: section reaches the curve's domain boundary");
        }
        return solve_bracketed(level_df, bracket.first, bracket.second, ftol).x;
    };

    SectionBounds b;
    b.s1 = find(-1.0, range.lo + inset);
    b.s2 = find(+1.0, range.hi - inset);
    b.x1 = trace.sample(b.s1).x;
    b.x2 = trace.sample(b.s2).x;
    return b;
}

/// Chart-frame section quantities; world fields are left at zero.
template <ChartTrace T>
Section measure_section(const T& trace, double h) {
    const SectionBounds bounds = section_bounds(trace, h);
    Section sec;
    sec.h = h;
    sec.x1 = bounds.x1;
    sec.x2 = bounds.x2;
    sec.L = bounds.x2 - bounds.x1;
    sec.R = h * sec.L;

    const double reach = std::max(std::abs(bounds.x1), std::abs(bounds.x2));
    const Values<4> tol{1e-12 * h * sec.L, 1e-12 * h * h * sec.L, 1e-12 * h * sec.L * reach,
                        1e-12 * h * h * sec.L};
    auto integrand = [&](double s) {
        const TraceSample t = trace.sample(s);
        const double gap = h - t.y;
        return Values<4>{gap * t.dx, 0.5 * (h * h - t.y * t.y) * t.dx, t.x * gap * t.dx, 0.5 * t.y * t.y * t.dx};
    };
    const Values<4> r = adaptive_simpson<4>(integrand, bounds.s1, bounds.s2, tol);
    sec.S = r[0];
    sec.phi = r[1];
    sec.psi = r[2];
    sec.phi2 = r[3];
    if (!(sec.S > 0.0) || !(sec.L > 0.0)) {
        throw GeometryError("degenerate section at h=" + format_number(h));
    }
    sec.centroid_chart = {sec.psi / sec.S, sec.phi / sec.S};
    sec.d = sec.centroid_chart.y;
    return sec;
}

inline Point point_V(const FramedPoint& fp, double h) { return {fp.b, fp.c + fp.w * h}; }

/// The section cut off at normal offset h from the tangent at fp.
inline Section compute_section(const FramedPoint& fp, double h) {
    const RotatedChart chart(fp);
    Section sec = measure_section(chart, h);
    sec.centroid_world = chart.forward(sec.centroid_chart);
    sec.V_world = point_V(fp, h);
    sec.P = fp.point();
    return sec;
}

/// Area of the triangle ABP: base L on the chord, apex P at distance h.
inline double triangle_area(const Section& sec) { return 0.5 * sec.L * sec.h; }

}  // namespace convexsec
