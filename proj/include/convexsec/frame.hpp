#pragma once

#include <cmath>
#include <string>
#include <utility>

#include "convexsec/curve.hpp"
#include "convexsec/error.hpp"
#include "convexsec/jet.hpp"
#include "convexsec/roots.hpp"

namespace convexsec {

struct ChartPoint {
    double x = 0.0;
    double y = 0.0;
};

struct Vec2 {
    double u = 0.0;
    double v = 0.0;

    double norm() const { return std::hypot(u, v); }
    double dot(const Vec2& o) const { return u * o.u + v * o.v; }
};

/// A point P = (b, c) on a curve together with its Frenet data.
/// theta is the angle from the positive v-axis to the convex-side normal,
/// alpha = tan(theta) = g'(b) and w = sec(theta) = sqrt(1 + alpha^2).
struct FramedPoint {
    Curve curve;
    double b = 0.0;
    double c = 0.0;
    Vec2 tangent;
    Vec2 normal;
    double theta = 0.0;
    double alpha = 0.0;
    double w = 1.0;
    double kappa = 0.0;

    Point point() const { return {b, c}; }
};

inline FramedPoint frame_at(const Curve& curve, double u) {
    const Jet2 g = curve.jet(u);
    const double w = std::sqrt(1.0 + g.d1 * g.d1);
    const double kappa = g.d2 / (w * w * w);
    if (!(kappa > 0.0)) {
        throw GeometryError("non-positive curvature " + format_number(kappa) + " at u=" + format_number(u));
    }
    return FramedPoint{
        .curve = curve,
        .b = u,
        .c = g.v,
        .tangent = {1.0 / w, g.d1 / w},
        .normal = {-g.d1 / w, 1.0 / w},
        .theta = std::atan(g.d1),
        .alpha = g.d1,
        .w = w,
        .kappa = kappa,
    };
}

/// One sample of the curve trace in chart coordinates, with derivatives
/// taken along the trace parameter.
struct TraceSample {
    double x = 0.0;
    double dx = 0.0;
    double y = 0.0;
    double dy = 0.0;
};

/// Rigid chart at a framed point: P goes to the origin and the tangent at P
/// to the x-axis, with the convex side toward +y.
///
///   forward:  u = x cos(theta) - y sin(theta) + b,   v = x sin(theta) + y cos(theta) + c
///   inverse:  x = (u - b) cos(theta) + (v - c) sin(theta),
///             y = -(u - b) sin(theta) + (v - c) cos(theta)
///
/// The curve is traced by s = u - b, so the chart is usable even where
/// the rotated curve would be awkward to write as y = f(x).
class RotatedChart {
public:
    explicit RotatedChart(FramedPoint fp)
        : fp_(std::move(fp)), cos_(std::cos(fp_.theta)), sin_(std::sin(fp_.theta)) {}

    const FramedPoint& frame() const { return fp_; }
    double theta() const { return fp_.theta; }
    double curvature() const { return fp_.kappa; }

    Point forward(ChartPoint q) const {
        return {q.x * cos_ - q.y * sin_ + fp_.b, q.x * sin_ + q.y * cos_ + fp_.c};
    }

    ChartPoint inverse(Point p) const {
        const double du = p.u - fp_.b;
        const double dv = p.v - fp_.c;
        return {du * cos_ + dv * sin_, -du * sin_ + dv * cos_};
    }

    /// Trace parameter range (open), s = u - b.
    Interval parameter_range() const {
        const Interval d = fp_.curve.domain();
        return {d.lo - fp_.b, d.hi - fp_.b};
    }

    TraceSample sample(double s) const {
        const Jet2 g = fp_.curve.jet(fp_.b + s);
        const double dv = g.v - fp_.c;
        return {s * cos_ + dv * sin_, cos_ + g.d1 * sin_, -s * sin_ + dv * cos_, -sin_ + g.d1 * cos_};
    }

    /// Chart ordinate only; cheaper than sample() when derivatives are unused.
    double height(double s) const {
        const double dv = fp_.curve.value(fp_.b + s) - fp_.c;
        return -s * sin_ + dv * cos_;
    }

    /// Trace parameter whose chart abscissa is x.
    double parameter_at(double x) const {
        if (x == 0.0) return 0.0;
        const Interval range = parameter_range();
        const double inset = 1e-12 * (range.hi - range.lo);
        const double limit = x > 0.0 ? range.hi - inset : range.lo + inset;
        auto abscissa = [&](double s) { return sample(s).x - x; };
        const auto [near, far] = bracket_outward(abscissa, 0.0, 0.25 * x, limit);
        return solve_bracketed(
                   [&](double s) {
                       const TraceSample t = sample(s);
                       return std::pair{t.x - x, t.dx};
                   },
                   near, far, 0.0)
            .x;
    }

    /// The curve as y = f(x) in chart coordinates, with f' and f''.
    Jet2 f_jet(double x) const {
        const double s = parameter_at(x);
        const Jet2 g = fp_.curve.jet(fp_.b + s);
        const double dx = cos_ + g.d1 * sin_;
        const double ddx = g.d2 * sin_;
        const double dy = -sin_ + g.d1 * cos_;
        const double ddy = g.d2 * cos_;
        if (!(dx > 0.0)) {
            throw GeometryError("curve is not a graph over the chart tangent at x=" + format_number(x));
        }
        const double y = -s * sin_ + (g.v - fp_.c) * cos_;
        return {y, dy / dx, (ddy * dx - dy * ddx) / (dx * dx * dx)};
    }
    double f(double x) const { return f_jet(x).v; }

private:
    FramedPoint fp_;
    double cos_;
    double sin_;
};

inline RotatedChart to_chart(const FramedPoint& fp) { return RotatedChart(fp); }

}  // namespace convexsec
