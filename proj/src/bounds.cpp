#include "korovkin/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace korovkin {

std::string to_string(BoundFlavor flavor) {
    switch (flavor) {
        case BoundFlavor::ShishaMond: return "shisha-mond";
        case BoundFlavor::DeVore: return "devore";
        case BoundFlavor::TrigShishaMond: return "trig-shisha-mond";
        case BoundFlavor::TrigDeVore: return "trig-devore";
    }
    return "?";
}

BoundFlavor bound_flavor_from_string(const std::string& s) {
    if (s == "shisha-mond" || s == "sm") return BoundFlavor::ShishaMond;
    if (s == "devore" || s == "dv") return BoundFlavor::DeVore;
    if (s == "trig-shisha-mond" || s == "trig-sm") return BoundFlavor::TrigShishaMond;
    if (s == "trig-devore" || s == "trig-dv") return BoundFlavor::TrigDeVore;
    throw Error("unknown bound flavor: " + s);
}

namespace {

bool is_trig(BoundFlavor f) {
    return f == BoundFlavor::TrigShishaMond || f == BoundFlavor::TrigDeVore;
}

bool is_devore(BoundFlavor f) {
    return f == BoundFlavor::DeVore || f == BoundFlavor::TrigDeVore;
}

/// L_n((x-.)^2)(x) (algebraic) or L_n(sin^2((x-.)/2))(x) (trig) as a handle.
FunctionHandle second_moment_function(const OperatorSpec& op, bool trig,
                                      const QuadratureConfig& cfg) {
    FunctionHandle g;
    g.domain = op.domain();
    if (!trig) {
        if (op.kind == OperatorKind::Kantorovich) {
            const int n = op.n;
            g.name = "kantorovich-second-central(n=" + std::to_string(n) + ")";
            g.eval = [n](double x) { return kantorovich_second_central(n, x); };
            g.lipschitz = (n - 1.0) / ((n + 1.0) * (n + 1.0));
            return g;
        }
        g.name = op.label() + "[(x-.)^2]";
        g.eval = [op, cfg](double x) {
            FunctionHandle sq;
            sq.name = "sq";
            sq.domain = op.domain();
            sq.eval = [x](double t) {
                const double d = x - t;
                return d * d;
            };
            return apply(op, sq, x, cfg);
        };
        return g;
    }
    g.name = op.label() + "[sin^2((x-.)/2)]";
    g.periodic = true;
    g.eval = [op, cfg](double x) {
        FunctionHandle sq;
        sq.name = "sin2half";
        sq.domain = periodic_interval;
        sq.periodic = true;
        sq.eval = [x](double t) {
            const double s = std::sin(0.5 * (x - t));
            return s * s;
        };
        return apply(op, sq, x, cfg);
    };
    return g;
}

} // namespace

MuResult mu_n_detailed(const SpaceSpec& space, const OperatorSpec& op,
                       const QuadratureConfig& cfg) {
    const bool trig = (space.domain == periodic_interval);
    if (trig && op.kind == OperatorKind::Kantorovich) {
        throw Error("mu_n: Kantorovich operator has no periodic variant");
    }
    if (!trig && op.kind == OperatorKind::Fejer) {
        throw Error("mu_n: Fejer means live on the periodic domain");
    }
    const FunctionHandle g = second_moment_function(op, trig, cfg);
    const NormResult nr = norm(space, g, cfg);
    MuResult out;
    if (nr.value <= 0.0) {
        out.value = 0.0;
        out.err = std::sqrt(std::max(0.0, nr.est_error));
    } else {
        out.value = std::sqrt(nr.value);
        out.err = nr.est_error / (2.0 * out.value);
    }
    if (trig) {
        out.value *= std::numbers::pi;
        out.err *= std::numbers::pi;
    }
    return out;
}

double mu_n(const SpaceSpec& space, const OperatorSpec& op, const QuadratureConfig& cfg) {
    return mu_n_detailed(space, op, cfg).value;
}

namespace {

struct UnitalTerms {
    double c_norm = 0.0;       // ||L_n 1||_X
    double c_err = 0.0;
    double unital_gap = 0.0;   // ||L_n 1 - 1||_X
    double unital_gap_err = 0.0;
};

UnitalTerms unital_terms(const SpaceSpec& space, const OperatorSpec& op,
                         const QuadratureConfig& cfg) {
    UnitalTerms t;
    if (op.unital()) {
        const NormResult one = norm(space, make_constant(1.0, space.domain), cfg);
        t.c_norm = one.value;
        t.c_err = one.est_error;
        return t;
    }
    if (!op.custom_apply) {
        throw NonUnitalWithoutOne("operator '" + op.label() + "' cannot evaluate L_n(1)");
    }
    const FunctionHandle one = make_constant(1.0, space.domain);
    const FunctionHandle u = apply_as_function(op, one, cfg);
    const NormResult nu = norm(space, u, cfg);
    t.c_norm = nu.value;
    t.c_err = nu.est_error;
    FunctionHandle gap;
    gap.name = u.name + "-1";
    gap.domain = u.domain;
    gap.periodic = u.periodic;
    gap.eval = [ue = u.eval](double x) { return ue(x) - 1.0; };
    const NormResult ng = norm(space, gap, cfg);
    t.unital_gap = ng.value;
    t.unital_gap_err = ng.est_error;
    return t;
}

BoundReport assemble(const SpaceSpec& space, const OperatorSpec& op,
                     const FunctionHandle& f, BoundFlavor flavor,
                     const BoundOptions& opts) {
    space.validate();
    const bool trig = is_trig(flavor);
    if (trig) {
        if (!(space.domain == periodic_interval)) {
            throw InvalidSpace("trig bound requires a space over [-pi, pi]");
        }
        if (!f.periodic) throw NotPeriodic("trig bound requires a periodic function: " + f.name);
    } else if (!(space.domain == unit_interval)) {
        throw InvalidSpace("algebraic bound requires a space over [0,1]");
    }
    const bool devore = is_devore(flavor);
    if (devore && !f.has_derivative()) {
        throw MissingDerivative("DeVore bound requires a derivative rule for " + f.name);
    }

    BoundReport r;
    r.function = f.name;
    r.space = space.label();
    r.flavor = flavor;
    r.n = op.n;

    // Left-hand side.
    const FunctionHandle residual = operator_residual(op, f, opts.quad);
    const NormResult lhs = norm(space, residual, opts.quad);
    r.lhs = lhs.value;

    const SupEstimate sup_f = sup_norm_estimate(f, opts.sup_resolution);
    // Each residual evaluation carries the operator's own quadrature error;
    // through any function norm this contributes at most ||1||_X times the
    // pointwise envelope.
    const double eval_slack = 8.0 * (opts.quad.rel_tol * (sup_f.value + 1.0) + opts.quad.abs_tol);

    // mu_n and the modulus argument function.
    const MuResult mu = mu_n_detailed(space, op, opts.quad);
    r.mu_n = mu.value;

    const UnitalTerms ut = unital_terms(space, op, opts.quad);
    r.c_norm = ut.c_norm;
    r.term_unital = sup_f.value * ut.unital_gap;

    double rhs_err = ut.unital_gap * sup_f.slack + sup_f.value * ut.unital_gap_err +
                     eval_slack * (ut.c_norm + 1.0);
    if (mu.value <= 0.0) {
        // Degenerate second moment: the operator reproduces the test
        // functions exactly; the main term vanishes with omega undefined.
        r.omega_val = 0.0;
        r.term_main = 0.0;
        r.term_drift = 0.0;
    } else if (!devore) {
        const ModulusEstimate om = modulus_of_continuity(f, mu.value, opts.modulus_resolution);
        r.omega_val = om.value;
        const double om_slack = modulus_slack(f, om);
        const double om_mu_slack = (f.lipschitz ? *f.lipschitz : 2.0 * om.value / mu.value) * mu.err;
        r.term_main = (ut.c_norm + 1.0) * om.value;
        rhs_err += ut.c_err * om.value + (ut.c_norm + 1.0) * (om_slack + om_mu_slack);
    } else {
        const FunctionHandle fp = f.derivative_handle();
        const SupEstimate sup_fp = sup_norm_estimate(fp, opts.sup_resolution);
        const ModulusEstimate om = modulus_of_continuity(fp, mu.value, opts.modulus_resolution);
        r.omega_val = om.value;
        const double om_slack = modulus_slack(fp, om);
        const double om_mu_slack = (fp.lipschitz ? *fp.lipschitz : 2.0 * om.value / mu.value) * mu.err;
        const double sqrt_c = std::sqrt(ut.c_norm);
        r.term_drift = sqrt_c * mu.value * sup_fp.value;
        r.term_main = (sqrt_c + 1.0) * mu.value * om.value;
        const double sqrt_c_err = ut.c_norm > 0 ? ut.c_err / (2.0 * sqrt_c) : ut.c_err;
        rhs_err += sqrt_c_err * mu.value * sup_fp.value +
                   sqrt_c * (mu.err * sup_fp.value + mu.value * sup_fp.slack) +
                   sqrt_c_err * mu.value * om.value +
                   (sqrt_c + 1.0) * (mu.err * om.value + mu.value * (om_slack + om_mu_slack));
    }

    r.rhs = r.term_unital + r.term_drift + r.term_main;
    r.est_error = lhs.est_error + rhs_err;
    r.holds = r.lhs <= r.rhs + r.est_error;
    r.holds_strict = r.lhs <= r.rhs;
    r.ratio = r.rhs > 0.0 ? r.lhs / r.rhs : 0.0;
    return r;
}

} // namespace

BoundReport shisha_mond_bound(const SpaceSpec& space, const OperatorSpec& op,
                              const FunctionHandle& f, const BoundOptions& opts) {
    return assemble(space, op, f, BoundFlavor::ShishaMond, opts);
}

BoundReport devore_bound(const SpaceSpec& space, const OperatorSpec& op,
                         const FunctionHandle& f, const BoundOptions& opts) {
    return assemble(space, op, f, BoundFlavor::DeVore, opts);
}

BoundReport trig_bound(const SpaceSpec& space, const OperatorSpec& op,
                       const FunctionHandle& f, BoundFlavor flavor,
                       const BoundOptions& opts) {
    if (!is_trig(flavor)) {
        flavor = flavor == BoundFlavor::DeVore ? BoundFlavor::TrigDeVore
                                               : BoundFlavor::TrigShishaMond;
    }
    return assemble(space, op, f, flavor, opts);
}

BoundReport evaluate_bound(const SpaceSpec& space, const OperatorSpec& op,
                           const FunctionHandle& f, BoundFlavor flavor,
                           const BoundOptions& opts) {
    return assemble(space, op, f, flavor, opts);
}

SlopeFit fit_loglog_slope(std::span<const int> n_values, std::span<const double> values) {
    SlopeFit fit;
    if (n_values.size() != values.size() || n_values.size() < 2) return fit;
    for (double v : values) {
        // Values at the floating-point noise floor (an exactly reproduced
        // function) carry no rate information.
        if (!(v > 1e-13) || !std::isfinite(v)) return fit; // undefined
    }
    auto run = [&](std::size_t first) {
        const std::size_t m = n_values.size() - first;
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (std::size_t i = first; i < n_values.size(); ++i) {
            const double x = std::log(n_values[i] + 1.0);
            const double y = std::log(values[i]);
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        const double denom = m * sxx - sx * sx;
        SlopeFit out;
        out.defined = std::abs(denom) > 1e-14;
        if (!out.defined) return out;
        out.slope = (m * sxy - sx * sy) / denom;
        out.intercept = (sy - out.slope * sx) / m;
        double ss = 0.0;
        for (std::size_t i = first; i < n_values.size(); ++i) {
            const double x = std::log(n_values[i] + 1.0);
            const double res = std::log(values[i]) - (out.intercept + out.slope * x);
            ss += res * res;
        }
        out.residual_rms = std::sqrt(ss / m);
        return out;
    };
    fit = run(0);
    if (fit.defined && n_values.size() >= 5) {
        // Judge the smallest n against a fit of the remaining points; a
        // single pre-asymptotic outlier would otherwise inflate the full
        // fit's RMS and mask itself.
        const SlopeFit rest = run(1);
        if (rest.defined) {
            const double x0 = std::log(n_values[0] + 1.0);
            const double res0 =
                std::abs(std::log(values[0]) - (rest.intercept + rest.slope * x0));
            if (res0 > 3.0 * std::max(rest.residual_rms, 1e-9)) {
                SlopeFit refit = rest;
                refit.excluded_first = true;
                return refit;
            }
        }
    }
    return fit;
}

RateReport rate_sweep(const SpaceSpec& space, const OperatorSpec& op_template,
                      const FunctionHandle& f, std::span<const int> n_values,
                      BoundFlavor flavor, const BoundOptions& opts) {
    if (n_values.size() < 4) throw Error("rate_sweep: need at least 4 n values");
    for (std::size_t i = 1; i < n_values.size(); ++i) {
        if (n_values[i] <= n_values[i - 1]) throw Error("rate_sweep: n values must be strictly increasing");
    }
    RateReport report;
    report.n_values.assign(n_values.begin(), n_values.end());
    report.reports.resize(n_values.size());

    bool failed = false;
    std::string what;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n_values.size()); ++i) {
        try {
            report.reports[i] = assemble(space, op_template.with_n(n_values[i]), f, flavor, opts);
        } catch (const std::exception& e) {
#ifdef _OPENMP
#pragma omp critical(korovkin_sweep)
#endif
            {
                failed = true;
                what = e.what();
            }
        }
    }
    if (failed) throw Error("rate_sweep: " + what);

    for (const auto& r : report.reports) {
        report.lhs_values.push_back(r.lhs);
        report.rhs_values.push_back(r.rhs);
        report.mu_values.push_back(r.mu_n);
    }
    report.slope_lhs = fit_loglog_slope(n_values, report.lhs_values);
    report.slope_rhs = fit_loglog_slope(n_values, report.rhs_values);
    return report;
}

} // namespace korovkin
