#include "korovkin/operators.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>

namespace korovkin {

std::string OperatorSpec::label() const {
    switch (kind) {
        case OperatorKind::Kantorovich: return "kantorovich(n=" + std::to_string(n) + ")";
        case OperatorKind::Fejer: return "fejer(n=" + std::to_string(n) + ")";
        case OperatorKind::Custom: return custom_name + "(n=" + std::to_string(n) + ")";
    }
    return "?";
}

OperatorSpec kantorovich(int n) {
    if (n < 1) throw Error("kantorovich: n must be >= 1");
    OperatorSpec op;
    op.kind = OperatorKind::Kantorovich;
    op.n = n;
    return op;
}

OperatorSpec fejer(int n) {
    if (n < 1) throw Error("fejer: n must be >= 1");
    OperatorSpec op;
    op.kind = OperatorKind::Fejer;
    op.n = n;
    return op;
}

OperatorSpec custom_operator(std::string name,
                             std::function<double(const FunctionHandle&, double)> apply_rule,
                             bool is_unital, const QuadratureConfig& cfg) {
    if (!apply_rule) throw Error("custom operator needs an apply rule");
    OperatorSpec op;
    op.kind = OperatorKind::Custom;
    op.n = 1;
    op.custom_apply = std::move(apply_rule);
    op.custom_is_unital = is_unital;
    op.custom_name = std::move(name);

    // Positivity probe: nonnegative inputs must not map below -10 * abs_tol.
    const std::vector<FunctionHandle> probes = {
        make_constant(1.0), make_monomial(1), make_monomial(2),
        make_parabola_bump(), make_abs_shift()};
    for (const auto& p : probes) {
        for (int i = 0; i < 33; ++i) {
            const double x = i / 32.0;
            const double v = op.custom_apply(p, x);
            require_finite(v, "custom operator probe");
            if (v < -10.0 * cfg.abs_tol) {
                throw Error("custom operator '" + op.custom_name +
                            "' violates positivity at x = " + std::to_string(x));
            }
        }
    }
    return op;
}

std::vector<double> bernstein_weights(int n, double x) {
    if (n < 1) throw Error("bernstein_weights: n must be >= 1");
    if (x < 0.0 || x > 1.0) throw Error("bernstein_weights: x outside [0,1]");
    std::vector<double> w(n + 1, 0.0);
    if (x == 0.0) {
        w[0] = 1.0;
        return w;
    }
    if (x == 1.0) {
        w[n] = 1.0;
        return w;
    }
    const double ratio = x / (1.0 - x);
    if (n <= 60) {
        // Direct recurrence from the smaller tail; the symmetric flip keeps
        // the seed (1-x)^n away from underflow.
        if (x > 0.5) {
            auto flipped = bernstein_weights(n, 1.0 - x);
            std::reverse(flipped.begin(), flipped.end());
            return flipped;
        }
        double b = std::pow(1.0 - x, n);
        for (int k = 0; k <= n; ++k) {
            w[k] = b;
            if (k < n) b *= ratio * static_cast<double>(n - k) / static_cast<double>(k + 1);
        }
        return w;
    }
    // Seed at the modal index via lgamma, then recur outward. Keeps every
    // intermediate near the scale of the largest weight.
    const int k0 = std::clamp(static_cast<int>((n + 1) * x), 0, n);
    const double log_seed = std::lgamma(n + 1.0) - std::lgamma(k0 + 1.0) -
                            std::lgamma(n - k0 + 1.0) + k0 * std::log(x) +
                            (n - k0) * std::log1p(-x);
    w[k0] = std::exp(log_seed);
    for (int k = k0; k < n; ++k) {
        w[k + 1] = w[k] * ratio * static_cast<double>(n - k) / static_cast<double>(k + 1);
    }
    for (int k = k0; k > 0; --k) {
        w[k - 1] = w[k] / ratio * static_cast<double>(k) / static_cast<double>(n - k + 1);
    }
    return w;
}

std::vector<double> kantorovich_cell_integrals(const FunctionHandle& f, int n,
                                               const QuadratureConfig& cfg) {
    if (n < 1) throw Error("kantorovich: n must be >= 1");
    const int cells = n + 1;
    std::vector<double> out(cells);
    bool failed = false;
    std::string what;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (cells >= 64)
#endif
    for (int k = 0; k < cells; ++k) {
        try {
            const double a = static_cast<double>(k) / cells;
            const double b = static_cast<double>(k + 1) / cells;
            out[k] = integrate(f.eval, a, b, f.breakpoints, cfg).value;
        } catch (const std::exception& e) {
#ifdef _OPENMP
#pragma omp critical(korovkin_cells)
#endif
            {
                failed = true;
                what = e.what();
            }
        }
    }
    if (failed) throw NonFiniteEvaluation("kantorovich cell integral failed: " + what);
    return out;
}

double kantorovich_apply_cells(std::span<const double> cells, int n, double x) {
    const auto w = bernstein_weights(n, x);
    double acc = 0.0;
    for (int k = 0; k <= n; ++k) acc += w[k] * cells[k];
    return (n + 1.0) * acc;
}

double kantorovich_apply(const FunctionHandle& f, int n, double x,
                         const QuadratureConfig& cfg) {
    const auto cells = kantorovich_cell_integrals(f, n, cfg);
    return kantorovich_apply_cells(cells, n, x);
}

double kantorovich_moment1(int n, double x) {
    return (2.0 * n * x + 1.0) / (2.0 * (n + 1.0));
}

double kantorovich_moment2(int n, double x) {
    return (3.0 * n * (n - 1.0) * x * x + 6.0 * n * x + 1.0) / (3.0 * (n + 1.0) * (n + 1.0));
}

double kantorovich_second_central(int n, double x) {
    // x^2 - 2x K_n(t)(x) + K_n(t^2)(x) simplifies to this form; the
    // equivalence is pinned by tests against the moment expansion and
    // against quadrature of K_n((x-t)^2).
    return ((n - 1.0) * x * (1.0 - x) + 1.0 / 3.0) / ((n + 1.0) * (n + 1.0));
}

double fejer_kernel(int n, double u) {
    const double m = n + 1.0;
    u = wrap_to_pi(u);
    const double half = 0.5 * u;
    if (std::abs(u) < 1e-6) {
        // sin(m v)^2 / (m sin(v)^2) ~ m (1 - (m^2 - 1) v^2 / 3), v = u/2.
        return m * (1.0 - (m * m - 1.0) * half * half / 3.0);
    }
    const double s = std::sin(m * half) / std::sin(half);
    return s * s / m;
}

double fejer_apply(const FunctionHandle& f, int n, double x,
                   const QuadratureConfig& cfg) {
    if (!f.periodic) throw NotPeriodic("fejer_apply: function '" + f.name + "' is not periodic");
    if (n < 1) throw Error("fejer: n must be >= 1");
    constexpr double pi = std::numbers::pi;
    // Zeros of F_n(x - t) in t: x - t = 2*pi*j / (n+1).
    std::vector<double> cuts;
    const double step = 2.0 * pi / (n + 1.0);
    const int j_lo = static_cast<int>(std::ceil((x - pi) / step));
    const int j_hi = static_cast<int>(std::floor((x + pi) / step));
    for (int j = j_lo; j <= j_hi; ++j) cuts.push_back(x - j * step);
    for (double b : f.breakpoints) cuts.push_back(b);
    auto integrand = [&](double t) { return f.eval(t) * fejer_kernel(n, x - t); };
    const auto r = integrate(integrand, -pi, pi, cuts, cfg);
    return r.value / (2.0 * pi);
}

double apply(const OperatorSpec& op, const FunctionHandle& f, double x,
             const QuadratureConfig& cfg) {
    if (!op.domain().contains(x)) {
        throw Error("apply: point " + std::to_string(x) + " outside operator domain");
    }
    switch (op.kind) {
        case OperatorKind::Kantorovich: return kantorovich_apply(f, op.n, x, cfg);
        case OperatorKind::Fejer: return fejer_apply(f, op.n, x, cfg);
        case OperatorKind::Custom: return op.custom_apply(f, x);
    }
    throw Error("apply: unknown operator kind");
}

FunctionHandle apply_as_function(const OperatorSpec& op, const FunctionHandle& f,
                                 const QuadratureConfig& cfg) {
    FunctionHandle g;
    g.name = op.label() + "[" + f.name + "]";
    g.domain = op.domain();
    g.periodic = (op.kind == OperatorKind::Fejer);
    if (op.kind == OperatorKind::Kantorovich) {
        auto cells = std::make_shared<const std::vector<double>>(
            kantorovich_cell_integrals(f, op.n, cfg));
        const int n = op.n;
        g.eval = [cells, n](double x) { return kantorovich_apply_cells(*cells, n, x); };
    } else {
        g.eval = [op, f, cfg](double x) { return apply(op, f, x, cfg); };
    }
    return g;
}

FunctionHandle operator_residual(const OperatorSpec& op, const FunctionHandle& f,
                                 const QuadratureConfig& cfg) {
    FunctionHandle lf = apply_as_function(op, f, cfg);
    FunctionHandle r;
    r.name = lf.name + "-" + f.name;
    r.domain = lf.domain;
    r.periodic = lf.periodic && f.periodic;
    r.breakpoints = f.breakpoints;
    r.eval = [lf = std::move(lf.eval), fe = f.eval](double x) { return lf(x) - fe(x); };
    return r;
}

} // namespace korovkin
