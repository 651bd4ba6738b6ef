#pragma once

// h -> 0 limits of section ratios.
//
// Ratios r(h_k) sampled at h_k = h0 2^-k are fitted by least squares to a
// four-term model and the constant term is the extrapolated limit. Two bases
// are available:
//
//   SqrtH:    c0 + c1 sqrt(h) + c2 h + c3 h sqrt(h)
//   IntegerH: c0 + c1 h + c2 h^2 + c3 h^3
//
// The chord endpoints are the two branches x(+-sqrt(h)) of one function, so
// every symmetric section ratio of a smooth curve is even in sqrt(h) and the
// integer basis converges several orders faster. Auto fits both and keeps
// the one with the smaller error estimate.

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "convexsec/error.hpp"
#include "convexsec/frame.hpp"
#include "convexsec/section.hpp"

namespace convexsec {

enum class LimitModel { Auto, SqrtH, IntegerH };

inline const char* model_name(LimitModel m) {
    switch (m) {
        case LimitModel::Auto: return "auto";
        case LimitModel::SqrtH: return "sqrt_h";
        case LimitModel::IntegerH: return "integer_h";
    }
    return "?";
}

struct LimitSample {
    double h = 0.0;
    double ratio = 0.0;
};

struct LimitEstimate {
    double value = 0.0;
    double error_est = 0.0;
    std::vector<LimitSample> samples;  // strictly decreasing in h
    int model_order = 0;               // number of fitted terms
    LimitModel model = LimitModel::SqrtH;
};

inline constexpr int kDefaultLimitSamples = 8;
inline constexpr int kModelTerms = 4;
inline constexpr double kMaxFitCondition = 1e10;

namespace detail {

/// Least-squares fit of `samples` in powers of h^step (step 1/2 or 1).
inline LimitEstimate fit_limit(const std::vector<LimitSample>& samples, LimitModel model) {
    const double step = model == LimitModel::SqrtH ? 0.5 : 1.0;
    const int n = static_cast<int>(samples.size());
    const double h0 = samples.front().h;

    // abscissae scaled by h0 so the conditioning reflects the model only
    Eigen::MatrixXd A(n, kModelTerms);
    Eigen::VectorXd y(n);
    for (int k = 0; k < n; ++k) {
        const double t = std::pow(samples[k].h / h0, step);
        for (int j = 0; j < kModelTerms; ++j) A(k, j) = std::pow(t, j);
        y(k) = samples[k].ratio;
    }

    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    const double cond = sv(0) / sv(kModelTerms - 1);
    if (!(cond < kMaxFitCondition)) {
        throw GeometryError("ill-conditioned extrapolation fit (condition " + format_number(cond) + ")");
    }
    const Eigen::VectorXd coef = svd.solve(y);
    const Eigen::VectorXd residual = A * coef - y;

    const double t_min = std::pow(samples.back().h / h0, step);
    const double last_term = coef(kModelTerms - 1) * std::pow(t_min, kModelTerms - 1);

    LimitEstimate est;
    est.value = coef(0);
    est.error_est = residual.cwiseAbs().maxCoeff() + std::abs(last_term);
    est.samples = samples;
    est.model_order = kModelTerms;
    est.model = model;
    return est;
}

}  // namespace detail

inline LimitEstimate extrapolate(const std::function<double(double)>& ratio_fn, double h0, int n,
                                 LimitModel model = LimitModel::Auto) {
    if (n < kModelTerms) {
        throw SpecError("extrapolation needs at least 4 samples (got " + std::to_string(n) + ")");
    }
    if (!(h0 > 0.0) || !std::isfinite(h0)) {
        throw SpecError("h0 must be positive (got " + format_number(h0) + ")");
    }

    std::vector<LimitSample> samples;
    samples.reserve(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        const double h = std::ldexp(h0, -k);
        double r = 0.0;
        try {
            r = ratio_fn(h);
        } catch (const std::exception& e) {
            throw GeometryError("ratio evaluation failed at h=" + format_number(h) + ": " + e.what());
        }
        if (!std::isfinite(r)) {
            throw GeometryError("ratio is not finite at h=" + format_number(h));
        }
        samples.push_back({h, r});
    }

    if (model != LimitModel::Auto) {
        return detail::fit_limit(samples, model);
    }
    LimitEstimate root_fit = detail::fit_limit(samples, LimitModel::SqrtH);
    LimitEstimate integer_fit = detail::fit_limit(samples, LimitModel::IntegerH);
    return integer_fit.error_est <= root_fit.error_est ? integer_fit : root_fit;
}

/// Default schedule start: h0 = 0.1 / kappa(P).
inline double default_h0(const FramedPoint& fp) { return 0.1 / fp.kappa; }

namespace detail {

inline LimitEstimate section_limit(const FramedPoint& fp, std::optional<double> h0, int n,
                                   const std::function<double(const Section&)>& ratio) {
    return extrapolate([&](double h) { return ratio(compute_section(fp, h)); }, h0.value_or(default_h0(fp)), n);
}

}  // namespace detail

/// kappa(P) = lim 8h / L(h)^2.
inline LimitEstimate curvature_from_chords(const FramedPoint& fp, std::optional<double> h0 = std::nullopt,
                                           int n = kDefaultLimitSamples) {
    return detail::section_limit(fp, h0, n, [](const Section& s) { return 8.0 * s.h / (s.L * s.L); });
}

/// lim L(h) / sqrt(h) = 2 sqrt(2) / sqrt(kappa).
inline LimitEstimate chord_constant(const FramedPoint& fp, std::optional<double> h0 = std::nullopt,
                                    int n = kDefaultLimitSamples) {
    return detail::section_limit(fp, h0, n, [](const Section& s) { return s.L / std::sqrt(s.h); });
}

/// lim d(h) / h = 3/5 for every strictly convex curve.
inline LimitEstimate centroid_ratio_limit(const FramedPoint& fp, std::optional<double> h0 = std::nullopt,
                                          int n = kDefaultLimitSamples) {
    return detail::section_limit(fp, h0, n, [](const Section& s) { return s.d / s.h; });
}

/// Limits of the moment and area scalings.
struct MomentLimits {
    LimitEstimate phi;   // phi / h^{5/2}  -> 4 sqrt2 / (5 sqrt kappa)
    LimitEstimate area;  // S / h^{3/2}    -> 4 sqrt2 / (3 sqrt kappa)
    LimitEstimate phi2;  // phi2 / h^{5/2} -> sqrt2 / (5 sqrt kappa)
    LimitEstimate phi1;  // (h^2 L / 2) / h^{5/2} -> sqrt2 / sqrt kappa
};

inline MomentLimits moment_constants(const FramedPoint& fp, std::optional<double> h0 = std::nullopt,
                                     int n = kDefaultLimitSamples) {
    const double start = h0.value_or(default_h0(fp));
    // one section per scale, shared by the four ratios
    std::vector<Section> sections;
    sections.reserve(static_cast<std::size_t>(std::max(n, 0)));
    auto lookup = [&](double h) -> const Section& {
        for (const Section& s : sections) {
            if (s.h == h) return s;
        }
        sections.push_back(compute_section(fp, h));
        return sections.back();
    };
    auto h52 = [](double h) { return h * h * std::sqrt(h); };

    MomentLimits m;
    m.phi = extrapolate([&](double h) { return lookup(h).phi / h52(h); }, start, n);
    m.area = extrapolate([&](double h) { return lookup(h).S / (h * std::sqrt(h)); }, start, n);
    m.phi2 = extrapolate([&](double h) { return lookup(h).phi2 / h52(h); }, start, n);
    m.phi1 = extrapolate([&](double h) { return 0.5 * h * h * lookup(h).L / h52(h); }, start, n);
    return m;
}

}  // namespace convexsec
