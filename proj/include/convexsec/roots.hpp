#pragma once

// Bracketing root finders: an outward marching bracket search and a
// safeguarded Newton iteration that falls back to bisection whenever the
// Newton step leaves the bracket or stalls.

#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "convexsec/error.hpp"

namespace convexsec {

struct RootResult {
    double x = 0.0;
    double residual = 0.0;  // |f(x)|
    int iterations = 0;
};

/// Walk from `start` in increments of `step` (sign gives direction) until
/// f changes sign or `limit` is reached. f(start) must be nonzero.
/// Returns (last point before the sign change, first point after it).
template <class F>
std::pair<double, double> bracket_outward(F&& f, double start, double step, double limit,
                                          int max_steps = 100000) {
    const double f0 = f(start);
    double prev = start;
    for (int k = 1; k <= max_steps; ++k) {
        double next = start + step * k;
        bool at_limit = false;
        if ((step > 0.0 && next >= limit) || (step < 0.0 && next <= limit)) {
            next = limit;
            at_limit = true;
        }
        const double fn = f(next);
        if ((fn >= 0.0) != (f0 >= 0.0)) {
            return {prev, next};
        }
        if (at_limit) {
            throw GeometryError("no sign change before domain limit " + std::to_string(limit));
        }
        prev = next;
    }
    throw GeometryError("bracket search exceeded step budget");
}

/// Solve f(x) = 0 on [a, b] where f(a), f(b) differ in sign.
/// `f_df(x)` returns {f(x), f'(x)}. Stops once |f| <= ftol or the bracket
/// has shrunk to a few ulps.
template <class FDF>
RootResult solve_bracketed(FDF&& f_df, double a, double b, double ftol, int max_iter = 200) {
    auto [fa, da] = f_df(a);
    auto [fb, db] = f_df(b);
    if (fa == 0.0) return {a, 0.0, 0};
    if (fb == 0.0) return {b, 0.0, 0};
    if ((fa > 0.0) == (fb > 0.0)) {
        throw GeometryError("root not bracketed");
    }
    // orient so that f(lo) < 0 < f(hi)
    double lo = fa < 0.0 ? a : b;
    double hi = fa < 0.0 ? b : a;

    double x = std::abs(fa) < std::abs(fb) ? a : b;
    auto [fx, dx] = f_df(x);
    double prev_step = std::abs(b - a);

    for (int it = 1; it <= max_iter; ++it) {
        if (std::abs(fx) <= ftol) {
            return {x, std::abs(fx), it};
        }
        const double width = std::abs(hi - lo);
        if (width <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(x))) {
            return {x, std::abs(fx), it};
        }

        double candidate = x - fx / dx;
        const bool inside = dx != 0.0 && std::isfinite(candidate) &&
                            candidate > std::min(lo, hi) && candidate < std::max(lo, hi);
        const double step = std::abs(candidate - x);
        if (!inside || step > 0.5 * prev_step) {
            candidate = 0.5 * (lo + hi);
        }
        prev_step = std::abs(candidate - x);
        x = candidate;
        std::tie(fx, dx) = f_df(x);
        if (fx < 0.0) {
            lo = x;
        } else {
            hi = x;
        }
    }
    throw GeometryError("root finding did not converge in " + std::to_string(max_iter) + " iterations");
}

}  // namespace convexsec
