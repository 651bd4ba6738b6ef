#pragma once

// Adaptive Simpson quadrature for vector-valued integrands.
//
// All components share the same subdivision; a panel is accepted once every
// component meets its own absolute tolerance. The accepted value includes the
// usual Richardson correction (S2 - S1) / 15.

#include <array>
#include <cmath>
#include <cstddef>
#include <string>

#include "convexsec/error.hpp"

namespace convexsec {

template <std::size_t N>
using Values = std::array<double, N>;

struct SimpsonOptions {
    int max_depth = 40;
    int min_depth = 4;
};

namespace detail {

template <std::size_t N>
Values<N> simpson_panel(double a, double b, const Values<N>& fa, const Values<N>& fm, const Values<N>& fb) {
    Values<N> r{};
    const double k = (b - a) / 6.0;
    for (std::size_t i = 0; i < N; ++i) r[i] = k * (fa[i] + 4.0 * fm[i] + fb[i]);
    return r;
}

template <std::size_t N, class F>
Values<N> simpson_recurse(F& f, double a, double b, const Values<N>& fa, const Values<N>& fm, const Values<N>& fb,
                          const Values<N>& whole, const Values<N>& tol, int depth, const SimpsonOptions& opt) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const Values<N> flm = f(lm);
    const Values<N> frm = f(rm);
    const Values<N> left = simpson_panel<N>(a, m, fa, flm, fm);
    const Values<N> right = simpson_panel<N>(m, b, fm, frm, fb);

    bool converged = depth >= opt.min_depth;
    Values<N> delta{};
    for (std::size_t i = 0; i < N; ++i) {
        delta[i] = left[i] + right[i] - whole[i];
        if (!(std::abs(delta[i]) <= 15.0 * tol[i])) converged = false;
    }
    if (converged) {
        Values<N> r{};
        for (std::size_t i = 0; i < N; ++i) r[i] = left[i] + right[i] + delta[i] / 15.0;
        return r;
    }
    if (depth >= opt.max_depth) {
        throw GeometryError("adaptive quadrature tolerance not met at recursion depth " + std::to_string(depth));
    }
    Values<N> half_tol{};
    for (std::size_t i = 0; i < N; ++i) half_tol[i] = 0.5 * tol[i];
    const Values<N> l = simpson_recurse<N>(f, a, m, fa, flm, fm, left, half_tol, depth + 1, opt);
    const Values<N> r = simpson_recurse<N>(f, m, b, fm, frm, fb, right, half_tol, depth + 1, opt);
    Values<N> sum{};
    for (std::size_t i = 0; i < N; ++i) sum[i] = l[i] + r[i];
    return sum;
}

}  // namespace detail

/// Integrate f: double -> std::array<double, N> over [a, b].
template <std::size_t N, class F>
Values<N> adaptive_simpson(F&& f, double a, double b, const Values<N>& abs_tol, const SimpsonOptions& opt = {}) {
    if (a == b) return Values<N>{};
    const Values<N> fa = f(a);
    const Values<N> fb = f(b);
    const Values<N> fm = f(0.5 * (a + b));
    const Values<N> whole = detail::simpson_panel<N>(a, b, fa, fm, fb);
    return detail::simpson_recurse<N>(f, a, b, fa, fm, fb, whole, abs_tol, 0, opt);
}

/// Scalar convenience overload.
template <class F>
double adaptive_simpson(F&& f, double a, double b, double abs_tol, const SimpsonOptions& opt = {}) {
    auto wrapped = [&](double x) { return Values<1>{f(x)}; };
    return adaptive_simpson<1>(wrapped, a, b, Values<1>{abs_tol}, opt)[0];
}

}  // namespace convexsec
