// convexsec: chord-section analysis of convex plane curves.
//
//   convexsec analyze     --curve SPEC --u U --h H
//   convexsec sweep       --curve SPEC --u U --h-min A --h-max B --steps N [--linear]
//   convexsec limit       --curve SPEC --u U [--h0 H0] [--n N]
//   convexsec detect      --curve SPEC [--u U]... [--h H]... [--threshold T] [--seed S]
//   convexsec reconstruct --curve SPEC --u U
//
// SPEC is a path to a curve JSON file or the JSON itself, e.g.
//   '{"kind":"builtin","name":"circle"}'  or
//   '{"kind":"graph","expr":"u^2 + u","domain":[-2,2]}'
//
// Exit codes: 0 success (detect: parabola), 1 detect: not a parabola,
// 2 usage or spec error, 3 numerical failure.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "convexsec/convexsec.hpp"
#include "convexsec/io.hpp"

namespace {

using namespace convexsec;

constexpr int kExitOk = 0;
constexpr int kExitNotParabola = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

struct RunConfig {
    std::string curve;
    std::vector<double> u;
    std::vector<double> h;
    std::optional<double> h_min;
    std::optional<double> h_max;
    int steps = 0;
    bool linear = false;
    std::optional<double> h0;
    int n = kDefaultLimitSamples;
    double threshold = kDefaultThreshold;
    std::string format;
    std::string out;
    std::optional<std::uint64_t> seed;
};

/// Failure inside a named processing step; keeps the error category.
template <class E>
[[noreturn]] void rethrow_in_step(const std::string& step, const E& e) {
    throw E(step + ": " + e.what());
}

template <class F>
auto in_step(const std::string& step, F&& f) {
    try {
        return f();
    } catch (const SpecError& e) {
        rethrow_in_step(step, SpecError(e.what()));
    } catch (const GeometryError& e) {
        rethrow_in_step(step, GeometryError(e.what()));
    }
}

std::string num(double x) { return format_number(x); }

/// Writes `text` to stdout, or atomically to `path` (no partial files).
void emit(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        std::cout.flush();
        return;
    }
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw SpecError("cannot write '" + tmp + "'");
        out << text;
        if (!out) {
            std::filesystem::remove(tmp);
            throw SpecError("failed writing '" + tmp + "'");
        }
    }
    std::filesystem::rename(tmp, path);
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

double first_point(const RunConfig& cfg, const Curve& curve) {
    if (cfg.u.size() > 1) throw SpecError("only detect accepts more than one --u");
    return cfg.u.empty() ? curve.default_points().front() : cfg.u.front();
}

void require_format(const RunConfig& cfg, const char* fallback, std::string& format) {
    format = cfg.format.empty() ? fallback : cfg.format;
    if (format != "csv" && format != "json") throw SpecError("--format must be csv or json");
}

Curve load(const RunConfig& cfg) {
    return in_step("curve spec", [&] { return load_curve(cfg.curve); });
}

const char* kSectionHeader = "h,x1,x2,L,S,R,phi,psi,d,d_over_h,S_over_triangle";

std::string section_csv_row(const Section& s) {
    return num(s.h) + "," + num(s.x1) + "," + num(s.x2) + "," + num(s.L) + "," + num(s.S) + "," + num(s.R) + "," +
           num(s.phi) + "," + num(s.psi) + "," + num(s.d) + "," + num(s.d / s.h) + "," +
           num(s.S / triangle_area(s));
}

int cmd_analyze(const RunConfig& cfg) {
    std::string format;
    require_format(cfg, "json", format);
    if (cfg.h.size() != 1) throw SpecError("analyze needs exactly one --h");
    require_positive_offset(cfg.h.front());
    const Curve curve = load(cfg);
    const double u = first_point(cfg, curve);
    const double h = cfg.h.front();

    const FramedPoint fp = in_step("frame at u=" + num(u), [&] { return frame_at(curve, u); });
    const Section sec = in_step("section at u=" + num(u) + ", h=" + num(h), [&] { return compute_section(fp, h); });

    if (format == "csv") {
        emit(std::string(kSectionHeader) + "\n" + section_csv_row(sec) + "\n", cfg.out);
    } else {
        emit(dump({{"curve", curve.description()}, {"frame", to_json(fp)}, {"section", to_json(sec)}}), cfg.out);
    }
    return kExitOk;
}

std::vector<double> sweep_offsets(const RunConfig& cfg) {
    if (!cfg.h_min || !cfg.h_max) throw SpecError("sweep needs --h-min and --h-max");
    if (cfg.steps < 2) throw SpecError("--steps must be at least 2");
    const double lo = *cfg.h_min;
    const double hi = *cfg.h_max;
    require_positive_offset(lo);
    require_positive_offset(hi);
    if (!(lo < hi)) throw SpecError("--h-min must be below --h-max");
    std::vector<double> hs;
    for (int k = 0; k < cfg.steps; ++k) {
        const double t = static_cast<double>(k) / (cfg.steps - 1);
        hs.push_back(cfg.linear ? lo + (hi - lo) * t : lo * std::pow(hi / lo, t));
    }
    hs.back() = hi;
    return hs;
}

int cmd_sweep(const RunConfig& cfg) {
    std::string format;
    require_format(cfg, "csv", format);
    const std::vector<double> hs = sweep_offsets(cfg);
    const Curve curve = load(cfg);
    const double u = first_point(cfg, curve);
    const FramedPoint fp = in_step("frame at u=" + num(u), [&] { return frame_at(curve, u); });

    std::string text = format == "csv" ? "h,L,S,phi,psi,d,d_over_h,S_over_triangle\n" : "";
    json rows = json::array();
    for (double h : hs) {
        const Section s = in_step("section at u=" + num(u) + ", h=" + num(h), [&] { return compute_section(fp, h); });
        const double ratio = s.S / triangle_area(s);
        if (format == "csv") {
            text += num(s.h) + "," + num(s.L) + "," + num(s.S) + "," + num(s.phi) + "," + num(s.psi) + "," +
                    num(s.d) + "," + num(s.d / s.h) + "," + num(ratio) + "\n";
        } else {
            rows.push_back({{"h", s.h},
                            {"L", s.L},
                            {"S", s.S},
                            {"phi", s.phi},
                            {"psi", s.psi},
                            {"d", s.d},
                            {"d_over_h", s.d / s.h},
                            {"S_over_triangle", ratio}});
        }
    }
    emit(format == "csv" ? text : dump(rows), cfg.out);
    return kExitOk;
}

int cmd_limit(const RunConfig& cfg) {
    if (!cfg.format.empty() && cfg.format != "json") throw SpecError("limit emits json only");
    const Curve curve = load(cfg);
    const double u = first_point(cfg, curve);
    const FramedPoint fp = in_step("frame at u=" + num(u), [&] { return frame_at(curve, u); });

    const LimitEstimate kappa = in_step("curvature extrapolation", [&] { return curvature_from_chords(fp, cfg.h0, cfg.n); });
    const LimitEstimate ratio = in_step("centroid ratio extrapolation", [&] { return centroid_ratio_limit(fp, cfg.h0, cfg.n); });
    const LimitEstimate chord = in_step("chord constant extrapolation", [&] { return chord_constant(fp, cfg.h0, cfg.n); });
    const MomentLimits moments = in_step("moment extrapolation", [&] { return moment_constants(fp, cfg.h0, cfg.n); });

    const json report = {
        {"u", u},
        {"kappa_analytic", fp.kappa},
        {"kappa_est", kappa.value},
        {"centroid_ratio", ratio.value},
        {"chord_constant", chord.value},
        {"moment_constants", {{"phi", moments.phi.value}, {"area", moments.area.value}, {"phi2", moments.phi2.value}}},
        {"errors",
         {{"kappa_est", kappa.error_est},
          {"centroid_ratio", ratio.error_est},
          {"chord_constant", chord.error_est},
          {"phi", moments.phi.error_est},
          {"area", moments.area.error_est},
          {"phi2", moments.phi2.error_est}}},
        {"estimates",
         {{"kappa_est", to_json(kappa)}, {"centroid_ratio", to_json(ratio)}, {"chord_constant", to_json(chord)}}},
    };
    emit(dump(report), cfg.out);
    return kExitOk;
}

std::vector<double> detect_points(const RunConfig& cfg, const Curve& curve) {
    if (!cfg.u.empty()) return cfg.u;
    if (!cfg.seed) return curve.default_points();
    std::mt19937_64 rng(*cfg.seed);
    const Interval d = curve.domain();
    std::uniform_real_distribution<double> dist(d.mid() - 0.2 * d.half_width(), d.mid() + 0.2 * d.half_width());
    std::vector<double> pts(5);
    for (double& p : pts) p = dist(rng);
    return pts;
}

int cmd_detect(const RunConfig& cfg) {
    if (!cfg.format.empty() && cfg.format != "json") throw SpecError("detect emits json only");
    const Curve curve = load(cfg);
    const std::vector<double> points = detect_points(cfg, curve);
    Grid grid;
    if (cfg.h.empty()) {
        grid = in_step("default grid", [&] { return default_grid(curve, points); });
    } else {
        for (double h : cfg.h) require_positive_offset(h);
        for (double u : points) {
            for (double h : cfg.h) grid.push_back({u, h});
        }
    }
    const DetectionReport report = in_step("detection", [&] { return classify(curve, grid, cfg.threshold); });
    emit(dump(to_json(report)), cfg.out);
    return report.parabola ? kExitOk : kExitNotParabola;
}

int cmd_reconstruct(const RunConfig& cfg) {
    if (!cfg.format.empty() && cfg.format != "json") throw SpecError("reconstruct emits json only");
    const Curve curve = load(cfg);
    const double u = first_point(cfg, curve);
    const FramedPoint fp = in_step("frame at u=" + num(u), [&] { return frame_at(curve, u); });
    const ParabolaCoefficients p = reconstruct_parabola(fp);
    json out = to_json(p);
    out["leading"] = p.leading();
    out["expression"] = p.expression();
    const auto conic = p.chart_conic();
    out["chart_conic"] = json::array({conic[0], conic[1], conic[2], conic[3], conic[4], conic[5]});
    emit(dump(out), cfg.out);
    return kExitOk;
}

void add_common(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("--curve", cfg.curve, "curve spec: JSON file path or inline JSON")->required();
    sub->add_option("--u", cfg.u, "base point u (repeatable)");
    sub->add_option("--out", cfg.out, "output path (default stdout)");
    sub->add_option("--format", cfg.format, "csv or json");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Chord-section geometry of strictly convex plane curves"};
    app.set_help_flag("--help", "print this help and exit");
    app.require_subcommand(1);
    RunConfig cfg;

    auto* analyze = app.add_subcommand("analyze", "one section at (u, h)");
    add_common(analyze, cfg);
    analyze->add_option("--h", cfg.h, "normal offset");

    auto* sweep = app.add_subcommand("sweep", "sections over a range of h (CSV)");
    add_common(sweep, cfg);
    sweep->add_option("--h-min", cfg.h_min, "smallest h");
    sweep->add_option("--h-max", cfg.h_max, "largest h");
    sweep->add_option("--steps", cfg.steps, "number of h values (>= 2)");
    sweep->add_flag("--linear", cfg.linear, "linear instead of geometric spacing");

    auto* limit = app.add_subcommand("limit", "h -> 0 limits: curvature, centroid ratio, chord constant");
    add_common(limit, cfg);
    limit->add_option("--h0", cfg.h0, "largest sample offset (default 0.1/kappa)");
    limit->add_option("--n", cfg.n, "number of samples (>= 4)");

    auto* detect = app.add_subcommand("detect", "finite-h parabola test");
    add_common(detect, cfg);
    detect->add_option("--h", cfg.h, "explicit offsets (default 0.025..0.2 / kappa)");
    detect->add_option("--threshold", cfg.threshold, "residual threshold");
    detect->add_option("--seed", cfg.seed, "draw 5 random base points with this seed");

    auto* reconstruct = app.add_subcommand("reconstruct", "vertical-axis parabola through the frame at u");
    add_common(reconstruct, cfg);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (analyze->parsed()) return cmd_analyze(cfg);
        if (sweep->parsed()) return cmd_sweep(cfg);
        if (limit->parsed()) return cmd_limit(cfg);
        if (detect->parsed()) return cmd_detect(cfg);
        if (reconstruct->parsed()) return cmd_reconstruct(cfg);
    } catch (const SpecError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const GeometryError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    }
    return kExitUsage;
}
