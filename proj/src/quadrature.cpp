#include "korovkin/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace korovkin {

namespace {

// 7-point Gauss-Legendre on [-1, 1]; exact through degree 13.
constexpr std::array<double, 7> kNodes = {
    -0.9491079123427585, -0.7415311855993945, -0.4058451513773972,
    0.0,
    0.4058451513773972, 0.7415311855993945, 0.9491079123427585};
constexpr std::array<double, 7> kWeights = {
    0.1294849661688697, 0.2797053914892766, 0.3818300505051189,
    0.4179591836734694,
    0.3818300505051189, 0.2797053914892766, 0.1294849661688697};

double panel(const RealFunction& f, double a, double b) {
    const double scale = 0.5 * (b - a);
    const double shift = 0.5 * (a + b);
    double sum = 0.0;
    for (std::size_t i = 0; i < kNodes.size(); ++i) {
        const double x = shift + scale * kNodes[i];
        const double v = f(x);
        if (!std::isfinite(v)) {
            throw NonFiniteEvaluation("integrand non-finite at x = " + std::to_string(x));
        }
        sum += kWeights[i] * v;
    }
    return scale * sum;
}

void refine(const RealFunction& f, double a, double b, double whole, double tol,
            int depth, const QuadratureConfig& cfg, QuadratureResult& out) {
    const double m = 0.5 * (a + b);
    const double left = panel(f, a, m);
    const double right = panel(f, m, b);
    const double split = left + right;
    const double err = std::abs(split - whole);

    if (err <= tol || b - a < 16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(a))) {
        out.value += split;
        out.err_est += err;
        return;
    }
    if (depth >= cfg.max_depth) {
        out.value += split;
        out.err_est += err;
        out.depth_exceeded = true;
        return;
    }
    refine(f, a, m, left, 0.5 * tol, depth + 1, cfg, out);
    refine(f, m, b, right, 0.5 * tol, depth + 1, cfg, out);
}

QuadratureResult integrate_piece(const RealFunction& f, double a, double b,
                                 const QuadratureConfig& cfg) {
    QuadratureResult out;
    if (a == b) return out;
    const double whole = panel(f, a, b);
    const double tol = std::max(cfg.abs_tol, cfg.rel_tol * std::abs(whole));
    refine(f, a, b, whole, tol, 0, cfg, out);
    // One pass of tolerance re-check against the final value: the initial
    // relative scale can underestimate |integral| for oscillatory integrands.
    const double final_tol = std::max(cfg.abs_tol, cfg.rel_tol * std::abs(out.value));
    if (out.err_est > final_tol && !out.depth_exceeded) {
        QuadratureResult retry;
        refine(f, a, b, whole, final_tol, 0, cfg, retry);
        return retry;
    }
    return out;
}

} // namespace

namespace {

void check_config(const QuadratureConfig& cfg) {
    if (!(cfg.rel_tol > 0.0) || !(cfg.abs_tol > 0.0) || cfg.max_depth < 1) {
        throw Error("quadrature config: tolerances must be positive, max_depth >= 1");
    }
}

} // namespace

QuadratureResult integrate(const RealFunction& f, double a, double b,
                           const QuadratureConfig& cfg) {
    check_config(cfg);
    if (a > b) throw Error("integrate: a > b");
    return integrate_piece(f, a, b, cfg);
}

QuadratureResult integrate(const RealFunction& f, double a, double b,
                           std::span<const double> breakpoints,
                           const QuadratureConfig& cfg) {
    check_config(cfg);
    if (a > b) throw Error("integrate: a > b");
    std::vector<double> cuts;
    cuts.reserve(breakpoints.size() + 2);
    cuts.push_back(a);
    for (double t : breakpoints) {
        if (t > a && t < b) cuts.push_back(t);
    }
    cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    QuadratureConfig piece_cfg = cfg;
    piece_cfg.abs_tol = cfg.abs_tol / static_cast<double>(cuts.size() - 1);
    QuadratureResult total;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        QuadratureResult r = integrate_piece(f, cuts[i], cuts[i + 1], piece_cfg);
        total.value += r.value;
        total.err_est += r.err_est;
        total.depth_exceeded |= r.depth_exceeded;
    }
    return total;
}

} // namespace korovkin
