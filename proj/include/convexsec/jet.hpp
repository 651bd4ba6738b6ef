#pragma once

// Second-order forward-mode dual numbers.
//
// A Jet2 carries (f, f', f'') with respect to a single scalar variable.
// Arithmetic propagates the chain rule exactly, so evaluating an expression
// at Jet2::variable(u) yields the value and the first two derivatives at u
// without finite differencing.

#include <cmath>

#include "convexsec/error.hpp"

namespace convexsec {

struct Jet2 {
    double v = 0.0;   // value
    double d1 = 0.0;  // first derivative
    double d2 = 0.0;  // second derivative

    constexpr Jet2() = default;
    constexpr Jet2(double value) : v(value) {}  // NOLINT: constants promote implicitly
    constexpr Jet2(double value, double first, double second) : v(value), d1(first), d2(second) {}

    static constexpr Jet2 variable(double x) { return {x, 1.0, 0.0}; }
    static constexpr Jet2 constant(double x) { return {x, 0.0, 0.0}; }

    bool finite() const { return std::isfinite(v) && std::isfinite(d1) && std::isfinite(d2); }

    constexpr Jet2 operator-() const { return {-v, -d1, -d2}; }

    constexpr Jet2& operator+=(const Jet2& o) {
        v += o.v;
        d1 += o.d1;
        d2 += o.d2;
        return *this;
    }
    constexpr Jet2& operator-=(const Jet2& o) {
        v -= o.v;
        d1 -= o.d1;
        d2 -= o.d2;
        return *this;
    }
    constexpr Jet2& operator*=(const Jet2& o) {
        *this = Jet2{v * o.v, d1 * o.v + v * o.d1, d2 * o.v + 2.0 * d1 * o.d1 + v * o.d2};
        return *this;
    }
    Jet2& operator/=(const Jet2& o);
};

constexpr Jet2 operator+(Jet2 a, const Jet2& b) { return a += b; }
constexpr Jet2 operator-(Jet2 a, const Jet2& b) { return a -= b; }
constexpr Jet2 operator*(Jet2 a, const Jet2& b) { return a *= b; }
inline Jet2 operator/(Jet2 a, const Jet2& b) { return a /= b; }

/// Compose an outer function with known (h, h', h'') at x = inner.v.
constexpr Jet2 chain(const Jet2& inner, double h0, double h1, double h2) {
    return {h0, h1 * inner.d1, h2 * inner.d1 * inner.d1 + h1 * inner.d2};
}

inline Jet2& Jet2::operator/=(const Jet2& o) {
    if (o.v == 0.0) {
        throw GeometryError("division by zero");
    }
    const double r = 1.0 / o.v;
    // reciprocal of o, then product rule
    const Jet2 inv = chain(o, r, -r * r, 2.0 * r * r * r);
    return *this *= inv;
}

inline Jet2 sqrt(const Jet2& x) {
    if (!(x.v > 0.0)) {
        throw GeometryError("sqrt of non-positive value " + std::to_string(x.v));
    }
    const double s = std::sqrt(x.v);
    return chain(x, s, 0.5 / s, -0.25 / (s * x.v));
}

inline Jet2 exp(const Jet2& x) {
    const double e = std::exp(x.v);
    if (!std::isfinite(e)) {
        throw GeometryError("exp overflow");
    }
    return chain(x, e, e, e);
}

inline Jet2 log(const Jet2& x) {
    if (!(x.v > 0.0)) {
        throw GeometryError("log of non-positive value " + std::to_string(x.v));
    }
    const double r = 1.0 / x.v;
    return chain(x, std::log(x.v), r, -r * r);
}

inline Jet2 sin(const Jet2& x) {
    const double s = std::sin(x.v);
    const double c = std::cos(x.v);
    return chain(x, s, c, -s);
}

inline Jet2 cos(const Jet2& x) {
    const double s = std::sin(x.v);
    const double c = std::cos(x.v);
    return chain(x, c, -s, -c);
}

inline Jet2 cosh(const Jet2& x) {
    const double c = std::cosh(x.v);
    return chain(x, c, std::sinh(x.v), c);
}

/// x^p for a constant exponent p. Integer exponents accept negative bases.
inline Jet2 pow(const Jet2& x, double p) {
    if (p == 0.0) {
        return Jet2::constant(1.0);
    }
    if (p == 1.0) {
        return x;
    }
    const bool integral = std::trunc(p) == p;
    if (!integral && !(x.v > 0.0)) {
        throw GeometryError("non-integer power of non-positive value " + std::to_string(x.v));
    }
    if (x.v == 0.0 && p < 2.0) {
        throw GeometryError("power " + std::to_string(p) + " is not twice differentiable at 0");
    }
    const double h0 = std::pow(x.v, p);
    const double h1 = p * std::pow(x.v, p - 1.0);
    const double h2 = p * (p - 1.0) * std::pow(x.v, p - 2.0);
    return chain(x, h0, h1, h2);
}

}  // namespace convexsec
