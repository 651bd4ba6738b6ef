#pragma once

#include <cmath>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "convexsec/error.hpp"
#include "convexsec/expression.hpp"
#include "convexsec/jet.hpp"
#include "convexsec/roots.hpp"

namespace convexsec {

struct Point {
    double u = 0.0;
    double v = 0.0;
};

struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    bool contains(double x) const { return x > lo && x < hi; }
    double mid() const { return 0.5 * (lo + hi); }
    double half_width() const { return 0.5 * (hi - lo); }
};

enum class CurveKind { Builtin, Graph, Transformed };

/// Curvature of a graph from its 2-jet; positive for the upward normal.
inline double graph_curvature(const Jet2& g) {
    const double w2 = 1.0 + g.d1 * g.d1;
    return g.d2 / (w2 * std::sqrt(w2));
}

/// A strictly locally convex graph v = g(u) on an open interval, with exact
/// derivatives up to order two. The convex side is always the upward normal.
/// Immutable after construction.
class Curve {
public:
    using Evaluator = std::function<Jet2(double)>;

    static constexpr int kScreenSamples = 257;
    static constexpr double kMinCurvature = 1e-9;

    /// Named curve from the builtin catalog. `param` defaults per curve.
    static Curve builtin(std::string_view name, std::optional<double> param = std::nullopt);

    /// Graph of a parsed expression over `domain`.
    static Curve graph(Expression expr, Interval domain);

    /// Graph of `base` rotated counter-clockwise by `angle` about the origin
    /// and then translated by `shift`. `source` must lie inside base's domain
    /// and the rotated trace must remain a graph over it.
    static Curve transformed(const Curve& base, double angle, Point shift, Interval source);

    CurveKind kind() const { return kind_; }
    const std::string& name() const { return name_; }
    const std::string& description() const { return description_; }
    std::optional<double> param() const { return param_; }
    Interval domain() const { return domain_; }
    bool in_domain(double u) const { return domain_.contains(u); }

    /// Sample points used when the caller does not choose any.
    const std::vector<double>& default_points() const { return default_points_; }

    /// (g, g', g'') at u. Throws GeometryError outside the domain or when
    /// the value is not finite.
    Jet2 jet(double u) const {
        if (!in_domain(u)) {
            throw GeometryError("u=" + format_number(u) + " outside curve domain (" + format_number(domain_.lo) +
                                ", " + format_number(domain_.hi) + ")");
        }
        const Jet2 r = eval_(u);
        if (!r.finite()) {
            throw GeometryError("curve '" + name_ + "' is not finite at u=" + format_number(u));
        }
        return r;
    }
    double value(double u) const { return jet(u).v; }
    double curvature(double u) const { return graph_curvature(jet(u)); }

private:
    Curve(CurveKind kind, std::string name, std::string description, Interval domain, Evaluator eval,
          std::vector<double> points, std::optional<double> param = std::nullopt)
        : kind_(kind),
          name_(std::move(name)),
          description_(std::move(description)),
          domain_(domain),
          eval_(std::move(eval)),
          default_points_(std::move(points)),
          param_(param) {
        screen_convexity();
    }

    void screen_convexity() const {
        if (!(domain_.lo < domain_.hi) || !std::isfinite(domain_.lo) || !std::isfinite(domain_.hi)) {
            throw SpecError("curve domain must be a finite interval with lo < hi");
        }
        for (int i = 0; i < kScreenSamples; ++i) {
            const double u = domain_.lo + (domain_.hi - domain_.lo) * (i + 1) / (kScreenSamples + 1);
            double k = 0.0;
            try {
                k = curvature(u);
            } catch (const GeometryError& e) {
                throw SpecError("curve '" + name_ + "' cannot be evaluated on its domain: " + e.what());
            }
            if (!(k > kMinCurvature)) {
                throw SpecError("curve '" + name_ + "' is not strictly convex: curvature " + format_number(k) +
                                " at u=" + format_number(u));
            }
        }
        for (double u : default_points_) {
            if (!in_domain(u)) {
                throw SpecError("default sample point outside domain");
            }
        }
    }

    CurveKind kind_;
    std::string name_;
    std::string description_;
    Interval domain_;
    Evaluator eval_;
    std::vector<double> default_points_;
    std::optional<double> param_;
};

/// Points at the domain midpoint and at +-10%, +-20% of the half width.
inline std::vector<double> central_points(Interval d) {
    const double m = d.mid();
    const double r = d.half_width();
    return {m, m - 0.1 * r, m + 0.1 * r, m - 0.2 * r, m + 0.2 * r};
}

inline Curve Curve::graph(Expression expr, Interval domain) {
    std::string text = expr.source();
    auto shared = std::make_shared<const Expression>(std::move(expr));
    return Curve(CurveKind::Graph, "graph", text, domain, [shared](double u) { return shared->jet(u); },
                 central_points(domain));
}

inline Curve Curve::builtin(std::string_view name, std::optional<double> param) {
    auto require_positive = [&](double p) {
        if (!(p > 0.0) || !std::isfinite(p)) {
            throw SpecError("builtin '" + std::string(name) + "' needs a positive param");
        }
        return p;
    };
    const std::string n(name);

    if (name == "parabola") {
        const double a = require_positive(param.value_or(1.0));
        return Curve(CurveKind::Builtin, n, format_number(a) + "*u^2", {-10.0 / a, 10.0 / a},
                     [a](double u) {
                         const Jet2 x = Jet2::variable(u);
                         return a * x * x;
                     },
                     {0.0, -0.25 / a, 0.25 / a, -0.5 / a, 0.5 / a}, a);
    }
    if (name == "tilted_parabola") {
        const double a = require_positive(param.value_or(1.0));
        return Curve(CurveKind::Builtin, n, format_number(a) + "*u^2 + u", {-10.0 / a, 10.0 / a},
                     [a](double u) {
                         const Jet2 x = Jet2::variable(u);
                         return a * x * x + x;
                     },
                     {0.0, -0.2 / a, 0.2 / a, -0.4 / a, 0.4 / a}, a);
    }
    if (name == "circle") {
        const double r = require_positive(param.value_or(1.0));
        return Curve(CurveKind::Builtin, n, format_number(r) + " - sqrt(" + format_number(r * r) + " - u^2)",
                     {-r, r},
                     [r](double u) {
                         const Jet2 x = Jet2::variable(u);
                         return r - sqrt(r * r - x * x);
                     },
                     {0.0, -0.15 * r, 0.15 * r, -0.3 * r, 0.3 * r}, r);
    }
    if (name == "ellipse") {
        // semi-axis `a` along u, unit semi-axis along v; lower arc through the origin
        const double a = require_positive(param.value_or(2.0));
        return Curve(CurveKind::Builtin, n, "1 - sqrt(1 - u^2/" + format_number(a * a) + ")", {-a, a},
                     [a](double u) {
                         const Jet2 x = Jet2::variable(u);
                         return 1.0 - sqrt(1.0 - x * x / (a * a));
                     },
                     {0.0, -0.1 * a, 0.1 * a, -0.2 * a, 0.2 * a}, a);
    }
    if (name == "catenary") {
        const double c = require_positive(param.value_or(1.0));
        return Curve(CurveKind::Builtin, n, format_number(c) + "*(cosh(u/" + format_number(c) + ") - 1)",
                     {-4.0 * c, 4.0 * c},
                     [c](double u) {
                         const Jet2 x = Jet2::variable(u);
                         return c * (cosh(x / c) - 1.0);
                     },
                     {0.0, -0.3 * c, 0.3 * c, -0.6 * c, 0.6 * c}, c);
    }
    if (name == "quartic") {
        const double p = require_positive(param.value_or(1.0));
        return Curve(CurveKind::Builtin, n, format_number(p) + "*u^4 + u^2", {-3.0, 3.0},
                     [p](double u) {
                         const Jet2 x = Jet2::variable(u);
                         const Jet2 x2 = x * x;
                         return p * x2 * x2 + x2;
                     },
                     {0.0, -0.15, 0.15, -0.3, 0.3}, p);
    }
    throw SpecError("unknown builtin curve '" + n + "'");
}

inline Curve Curve::transformed(const Curve& base, double angle, Point shift, Interval source) {
    if (!(source.lo < source.hi) || !base.in_domain(source.lo) || !base.in_domain(source.hi)) {
        throw SpecError("transform source interval must lie inside the base domain");
    }
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    // horizontal coordinate of the rotated trace as a function of the base parameter
    auto horizontal = [=](double t) {
        const Jet2 g = base.jet(t);
        return std::pair{t * c - g.v * s + shift.u, c - g.d1 * s};
    };
    for (int i = 0; i <= kScreenSamples + 1; ++i) {
        const double t = source.lo + (source.hi - source.lo) * i / (kScreenSamples + 1);
        if (!(horizontal(t).second > 0.0)) {
            throw SpecError("rotated trace is not a graph over the source interval");
        }
    }
    const Interval domain{horizontal(source.lo).first, horizontal(source.hi).first};

    auto eval = [=](double u) {
        const auto r = solve_bracketed(
            [&](double t) {
                const auto [x, dx] = horizontal(t);
                return std::pair{x - u, dx};
            },
            source.lo, source.hi, 0.0);
        const Jet2 g = base.jet(r.x);
        const double dp = c - g.d1 * s;
        const double ddp = -g.d2 * s;
        const Jet2 t{r.x, 1.0 / dp, -ddp / (dp * dp * dp)};
        return chain(t, t.v * s + g.v * c + shift.v, s + g.d1 * c, g.d2 * c);
    };

    std::vector<double> points = central_points(domain);
    std::string desc = base.description() + " rotated by " + format_number(angle) + " and shifted by (" +
                       format_number(shift.u) + ", " + format_number(shift.v) + ")";
    return Curve(CurveKind::Transformed, base.name() + "_transformed", std::move(desc), domain, std::move(eval),
                 std::move(points));
}

/// Value and first two derivatives of the curve at u.
inline Jet2 eval_jet2(const Curve& curve, double u) { return curve.jet(u); }

}  // namespace convexsec
