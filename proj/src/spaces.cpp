#include "korovkin/spaces.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <sstream>

#include "korovkin/kernels.hpp"

namespace korovkin {

namespace {

constexpr double kWeightClip = 1e12;

struct WeightEval {
    const FunctionHandle* w = nullptr;
    std::atomic<bool>* clipped = nullptr;

    double operator()(double x) const {
        if (!w) return 1.0;
        double v = w->eval(x);
        if (!std::isfinite(v) || v < 0.0 || v > kWeightClip) {
            if (clipped) clipped->store(true, std::memory_order_relaxed);
            v = std::clamp(std::isfinite(v) ? v : kWeightClip, 0.0, kWeightClip);
        }
        return v;
    }
};

bool is_identically_zero(const FunctionHandle& f) {
    // Cheap reject first: residual-style handles are expensive to evaluate.
    for (int i = 0; i <= 16; ++i) {
        if (f.eval(f.domain.lo + f.domain.length() * i / 16.0) != 0.0) return false;
    }
    const int probes = 257;
    const double h = f.domain.length() / probes;
    for (int i = 0; i <= probes; ++i) {
        if (f.eval(f.domain.lo + i * h) != 0.0) return false;
    }
    for (double b : f.breakpoints) {
        if (f.domain.contains(b) && f.eval(b) != 0.0) return false;
    }
    return true;
}

struct Integral {
    double value = 0.0;
    double err = 0.0;
};

/// integral of |f|^q * w over the space domain.
Integral power_integral(const FunctionHandle& f, double q, const WeightEval& w,
                        Interval domain, const QuadratureConfig& cfg) {
    std::vector<double> cuts = f.breakpoints;
    if (w.w) cuts.insert(cuts.end(), w.w->breakpoints.begin(), w.w->breakpoints.end());
    auto integrand = [&](double x) { return std::pow(std::abs(f.eval(x)), q) * w(x); };
    const auto r = integrate(integrand, domain.lo, domain.hi, cuts, cfg);
    return {std::max(0.0, r.value), r.err_est};
}

/// (value of I)^(1/q) with first-order error propagation.
NormResult root_of(Integral I, double q, std::string method) {
    NormResult out;
    out.method = std::move(method);
    if (I.value <= 0.0) {
        out.value = 0.0;
        out.est_error = std::pow(std::max(I.err, 0.0), 1.0 / q);
        return out;
    }
    out.value = std::pow(I.value, 1.0 / q);
    out.est_error = I.err * out.value / (q * I.value) + 1e-15;
    return out;
}

struct GoldenResult {
    double x = 0.0;
    double value = -std::numeric_limits<double>::infinity();
};

template <class Fn>
GoldenResult golden_max(Fn&& fn, double a, double b, int iters) {
    constexpr double inv_phi = 0.6180339887498949;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = fn(x1), f2 = fn(x2);
    for (int i = 0; i < iters; ++i) {
        if (f1 < f2) {
            a = x1;
            x1 = x2, f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = fn(x2);
        } else {
            b = x2;
            x2 = x1, f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = fn(x1);
        }
    }
    return f1 > f2 ? GoldenResult{x1, f1} : GoldenResult{x2, f2};
}

template <class Fn>
GoldenResult golden_min(Fn&& fn, double a, double b, int iters) {
    auto r = golden_max([&](double x) { return -fn(x); }, a, b, iters);
    return {r.x, -r.value};
}

// --- Sup -------------------------------------------------------------------

NormResult sup_kernel(const SpaceSpec& space, const FunctionHandle& f) {
    const auto est = sup_norm_estimate(f, space.resolution);
    return {est.value, "sup-sample", est.slack, false};
}

// --- Grand Lebesgue --------------------------------------------------------

/// Supremum over eps in (0, p-1) of the grand functional. Nodes accumulate
/// at both endpoints of the interval; the sup is often attained in the
/// eps -> p-1 limit.
NormResult grand_kernel(const SpaceSpec& space, const FunctionHandle& f,
                        const WeightEval& w, const QuadratureConfig& cfg,
                        bool weighted) {
    const double span = space.p - 1.0;
    double inner_err = 0.0;
    auto value_at = [&](double eps) {
        const double q = space.p - eps;
        const Integral I = power_integral(f, q, w, space.domain, cfg);
        if (I.value <= 0.0) return 0.0;
        const double s = std::pow(eps * I.value, 1.0 / q);
        inner_err = std::max(inner_err, I.err * s / (q * I.value));
        return s;
    };

    std::vector<double> nodes;
    const int half = 32;
    for (int i = 0; i < half; ++i) {
        const double t = std::pow(10.0, -14.0 + 14.0 * i / (half - 1)); // 1e-14 .. 1
        nodes.push_back(span * 0.5 * t);
        nodes.push_back(span * (1.0 - 0.5 * t));
    }
    std::sort(nodes.begin(), nodes.end());

    double best = 0.0;
    std::size_t best_i = 0;
    std::vector<double> vals(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        vals[i] = value_at(nodes[i]);
        if (vals[i] > best) {
            best = vals[i];
            best_i = i;
        }
    }
    const double lo = best_i > 0 ? nodes[best_i - 1] : nodes.front();
    const double hi = best_i + 1 < nodes.size() ? nodes[best_i + 1] : nodes.back();
    const auto refined = hi > lo ? golden_max(value_at, lo, hi, 40) : GoldenResult{nodes[best_i], best};

    NormResult out;
    out.method = weighted ? "weighted-grand-eps-search" : "grand-eps-search";
    out.value = std::max(best, refined.value);
    out.est_error = inner_err + std::abs(refined.value - best) + 1e-12;
    return out;
}

// --- Variable exponent (Luxemburg gauge) ------------------------------------

NormResult variable_kernel(const SpaceSpec& space, const FunctionHandle& f,
                           const QuadratureConfig& cfg) {
    const FunctionHandle& pfn = *space.exponent_fn;
    QuadratureConfig mod_cfg = cfg;
    mod_cfg.rel_tol = std::max(cfg.rel_tol, 1e-9);
    auto modular = [&](double lam) {
        auto integrand = [&](double t) {
            const double ratio = std::abs(f.eval(t)) / lam;
            const double pw = std::pow(ratio, pfn.eval(t));
            return std::min(pw, kWeightClip);
        };
        return integrate(integrand, space.domain.lo, space.domain.hi, f.breakpoints, mod_cfg).value;
    };

    double hi = sup_norm_estimate(f, 512).value + 1.0;
    while (modular(hi) > 1.0) hi *= 2.0;
    double lo = 0.0;
    // The modular is strictly decreasing in lambda for f != 0, so bisection
    // on modular(lambda) = 1 brackets the Luxemburg gauge.
    for (int i = 0; i < 200 && hi - lo > 1e-10 * hi + 1e-14; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (modular(mid) > 1.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    NormResult out;
    out.value = hi;
    out.method = "luxemburg-bisection";
    out.est_error = (hi - lo) + 1e-13;
    return out;
}

// --- Orlicz (Amemiya functional) --------------------------------------------

NormResult orlicz_kernel(const SpaceSpec& space, const FunctionHandle& f,
                         const QuadratureConfig& cfg) {
    const FunctionHandle& phi = *space.young_phi;
    double inner_err = 0.0;
    auto amemiya = [&](double k) {
        auto integrand = [&](double t) { return phi.eval(k * std::abs(f.eval(t))); };
        const auto I = integrate(integrand, space.domain.lo, space.domain.hi, f.breakpoints, cfg);
        inner_err = std::max(inner_err, I.err_est / k);
        return (1.0 + I.value) / k;
    };

    const double sup = sup_norm_estimate(f, 512).value;
    double k_mid = 1.0 / std::max(sup, 1e-8);
    double k_lo = k_mid, k_hi = k_mid;
    while (amemiya(k_lo / 4.0) < amemiya(k_lo)) k_lo /= 4.0;
    while (amemiya(k_hi * 4.0) < amemiya(k_hi)) k_hi *= 4.0;
    k_lo /= 4.0;
    k_hi *= 4.0;
    const auto r = golden_min([&](double lk) { return amemiya(std::exp(lk)); },
                              std::log(k_lo), std::log(k_hi), 80);

    NormResult out;
    out.value = r.value;
    out.method = "orlicz-amemiya";
    out.est_error = inner_err + 1e-10 * std::abs(r.value) + 1e-13;
    return out;
}

// --- Morrey-type interval suprema -------------------------------------------

struct MorreyGrid {
    std::vector<double> prefix; // prefix[k] = integral of |f|^p w over [0, k h]
    double quad_err = 0.0;
};

MorreyGrid morrey_cells(const FunctionHandle& f, double p, const WeightEval& w,
                        int n_cells, const QuadratureConfig& cfg) {
    MorreyGrid g;
    std::vector<double> cell(n_cells);
    std::vector<double> errs(n_cells);
    const double h = 1.0 / n_cells;
    bool failed = false;
    std::string what;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (n_cells >= 64)
#endif
    for (int i = 0; i < n_cells; ++i) {
        try {
            auto integrand = [&](double x) { return std::pow(std::abs(f.eval(x)), p) * w(x); };
            std::vector<double> cuts = f.breakpoints;
            if (w.w) cuts.insert(cuts.end(), w.w->breakpoints.begin(), w.w->breakpoints.end());
            const auto r = integrate(integrand, i * h, (i + 1) * h, cuts, cfg);
            cell[i] = std::max(0.0, r.value);
            errs[i] = r.err_est;
        } catch (const std::exception& e) {
#ifdef _OPENMP
#pragma omp critical(korovkin_morrey)
#endif
            {
                failed = true;
                what = e.what();
            }
        }
    }
    if (failed) throw NonFiniteEvaluation("morrey cell integral failed: " + what);
    g.prefix.assign(n_cells + 1, 0.0);
    for (int i = 0; i < n_cells; ++i) {
        g.prefix[i + 1] = g.prefix[i] + cell[i];
        g.quad_err += errs[i];
    }
    return g;
}

double morrey_scan(const MorreyGrid& g, int n_cells, double p, double p0,
                   kernels::PairScanResult* where = nullptr) {
    const double h = 1.0 / n_cells;
    const double expo = 1.0 / p0 - 1.0 / p;
    auto obj = [&](int i, int j) {
        const double mass = std::max(0.0, g.prefix[j] - g.prefix[i]);
        return std::pow((j - i) * h, expo) * std::pow(mass, 1.0 / p);
    };
    const auto best = kernels::pair_scan_max(n_cells, obj);
    if (where) *where = best;
    return best.value;
}

NormResult morrey_kernel(const SpaceSpec& space, const FunctionHandle& f,
                         const WeightEval& w, const QuadratureConfig& cfg,
                         bool weighted) {
    const int n = std::max(16, space.resolution);
    const double h = 1.0 / n;
    const MorreyGrid grid = morrey_cells(f, space.p, w, n, cfg);
    kernels::PairScanResult at;
    const double coarse_best = morrey_scan(grid, n, space.p, space.p0, &at);

    // Continuous refinement of the best cell pair: golden sections on each
    // endpoint, alternating, with partial-cell integrals from quadrature.
    auto mass_between = [&](double a, double b) {
        const int ia = std::min(n, static_cast<int>(std::ceil(a / h - 1e-12)));
        const int jb = std::max(0, static_cast<int>(std::floor(b / h + 1e-12)));
        auto integrand = [&](double x) { return std::pow(std::abs(f.eval(x)), space.p) * w(x); };
        double m;
        if (ia <= jb) {
            m = grid.prefix[jb] - grid.prefix[ia];
            if (a < ia * h) m += integrate(integrand, a, ia * h, f.breakpoints, cfg).value;
            if (jb * h < b) m += integrate(integrand, jb * h, b, f.breakpoints, cfg).value;
        } else {
            m = integrate(integrand, a, b, f.breakpoints, cfg).value;
        }
        return std::max(0.0, m);
    };
    const double expo = 1.0 / space.p0 - 1.0 / space.p;
    auto objective = [&](double a, double b) {
        if (b - a < 1e-9) return 0.0;
        return std::pow(b - a, expo) * std::pow(mass_between(a, b), 1.0 / space.p);
    };
    double a = at.i * h, b = at.j * h;
    double refined = coarse_best;
    for (int round = 0; round < 2; ++round) {
        const double a_lo = std::max(0.0, a - h), a_hi = std::min(b - 1e-9, a + h);
        const auto ra = golden_max([&](double t) { return objective(t, b); }, a_lo, a_hi, 24);
        if (ra.value > refined) {
            refined = ra.value;
            a = ra.x;
        }
        const double b_lo = std::max(a + 1e-9, b - h), b_hi = std::min(1.0, b + h);
        const auto rb = golden_max([&](double t) { return objective(a, t); }, b_lo, b_hi, 24);
        if (rb.value > refined) {
            refined = rb.value;
            b = rb.x;
        }
    }

    // First-order discretization gauge: the same scan on the half grid.
    double half_best = coarse_best;
    if (n % 2 == 0) {
        MorreyGrid coarse;
        coarse.prefix.resize(n / 2 + 1);
        for (int k = 0; k <= n / 2; ++k) coarse.prefix[k] = grid.prefix[2 * k];
        half_best = morrey_scan(coarse, n / 2, space.p, space.p0);
    }

    NormResult out;
    out.value = std::max(coarse_best, refined);
    out.method = weighted ? "weighted-morrey-interval-scan" : "morrey-interval-scan";
    out.est_error = (out.value - half_best) + grid.quad_err + 1e-12;
    return out;
}

// --- Rearrangement-based set suprema ----------------------------------------

/// sup over t of (t^-expo * integral_0^t of rearranged samples)^(1/root).
/// Exact for the piecewise-constant midpoint surrogate: on each linear piece
/// of the prefix the objective has no interior maximum, so grid knots
/// suffice.
double rearrangement_sup(const FunctionHandle& f, double power, double expo,
                         double root, int n) {
    SampledFunction s = sample(f, n);
    for (double& v : s.values) v = std::pow(std::abs(v), power);
    const SampledFunction r = decreasing_rearrangement(s);
    double prefix = 0.0;
    double best = 0.0;
    for (int k = 1; k <= n; ++k) {
        prefix += r.values[k - 1] / n;
        const double t = static_cast<double>(k) / n;
        best = std::max(best, std::pow(t, -expo) * prefix);
    }
    return std::pow(best, 1.0 / root);
}

NormResult small_morrey_kernel(const SpaceSpec& space, const FunctionHandle& f) {
    const int n = space.resolution;
    const double v = rearrangement_sup(f, space.p, space.lambda, space.p, n);
    const double v_half =
        n >= 2 ? rearrangement_sup(f, space.p, space.lambda, space.p, n / 2) : v;
    return {v, "small-morrey-rearrangement", std::abs(v - v_half) + 1e-13, false};
}

NormResult weak_mp_kernel(const SpaceSpec& space, const FunctionHandle& f) {
    const int n = space.resolution;
    const double expo = 1.0 - 1.0 / space.p;
    const double v = rearrangement_sup(f, 1.0, expo, 1.0, n);
    const double v_half = n >= 2 ? rearrangement_sup(f, 1.0, expo, 1.0, n / 2) : v;
    return {v, "weakmp-rearrangement", std::abs(v - v_half) + 1e-13, false};
}

} // namespace

// --- SpaceSpec --------------------------------------------------------------

std::string SpaceSpec::label() const {
    std::ostringstream s;
    auto num = [](double v) {
        std::ostringstream o;
        o << v;
        return o.str();
    };
    switch (kind) {
        case SpaceKind::Sup: s << "sup"; break;
        case SpaceKind::Lp: s << "lp(p=" << num(p) << ")"; break;
        case SpaceKind::WeightedLp:
            s << "wlp(p=" << num(p) << ",w=" << (weight ? weight->name : "?") << ")";
            break;
        case SpaceKind::GrandLp: s << "grand(p=" << num(p) << ")"; break;
        case SpaceKind::WeightedGrandLp:
            s << "wgrand(p=" << num(p) << ",w=" << (weight ? weight->name : "?") << ")";
            break;
        case SpaceKind::VariableLp:
            s << "varlp(p=" << (exponent_fn ? exponent_fn->name : "?") << ")";
            break;
        case SpaceKind::Orlicz:
            s << "orlicz(phi=" << (young_phi ? young_phi->name : "?") << ")";
            break;
        case SpaceKind::Morrey: s << "morrey(p=" << num(p) << ",p0=" << num(p0) << ")"; break;
        case SpaceKind::WeightedMorrey:
            s << "wmorrey(p=" << num(p) << ",p0=" << num(p0) << ",w="
              << (weight ? weight->name : "?") << ")";
            break;
        case SpaceKind::SmallMorrey:
            s << "smallmorrey(p=" << num(p) << ",lambda=" << num(lambda) << ")";
            break;
        case SpaceKind::WeakMp: s << "weakmp(p=" << num(p) << ")"; break;
    }
    if (domain == periodic_interval) s << "@2pi";
    return s.str();
}

void SpaceSpec::validate() const {
    auto fail = [&](const std::string& why) { throw InvalidSpace(label() + ": " + why); };
    if (resolution < 1) fail("resolution must be >= 1");
    const bool periodic_dom = (domain == periodic_interval);
    if (!periodic_dom && !(domain == unit_interval)) fail("domain must be [0,1] or [-pi,pi]");
    if (periodic_dom && kind != SpaceKind::Sup && kind != SpaceKind::Lp && kind != SpaceKind::WeightedLp) {
        fail("only sup and Lebesgue norms support the periodic domain");
    }
    switch (kind) {
        case SpaceKind::Sup:
            break;
        case SpaceKind::Lp:
            if (!(p >= 1.0) || !std::isfinite(p)) fail("requires 1 <= p < inf");
            break;
        case SpaceKind::WeightedLp:
            if (!(p > 1.0) || !std::isfinite(p)) fail("requires 1 < p < inf");
            if (!weight) fail("weight missing");
            break;
        case SpaceKind::GrandLp:
        case SpaceKind::WeightedGrandLp:
            if (!(p > 1.0) || !std::isfinite(p)) fail("requires 1 < p < inf");
            if (kind == SpaceKind::WeightedGrandLp && !weight) fail("weight missing");
            break;
        case SpaceKind::VariableLp: {
            if (!exponent_fn) fail("exponent function missing");
            for (int i = 0; i <= 32; ++i) {
                const double t = domain.lo + domain.length() * i / 32.0;
                const double pv = exponent_fn->eval(t);
                if (!std::isfinite(pv) || pv <= 1.0 || pv > 64.0) {
                    fail("exponent function must take values in (1, 64] on probes");
                }
            }
            break;
        }
        case SpaceKind::Orlicz: {
            if (!young_phi) fail("Young function missing");
            const auto& phi = *young_phi;
            if (std::abs(phi.eval(0.0)) > 1e-12) fail("Young function must vanish at 0");
            double prev = 0.0, prev_slope = 0.0;
            for (int i = 1; i <= 32; ++i) {
                const double t = 10.0 * i / 32.0;
                const double v = phi.eval(t);
                if (!std::isfinite(v) || v < prev - 1e-12) fail("Young function must be increasing");
                const double slope = (v - prev) / (10.0 / 32.0);
                if (slope < prev_slope - 1e-9) fail("Young function must be convex");
                prev = v;
                prev_slope = slope;
            }
            break;
        }
        case SpaceKind::Morrey:
        case SpaceKind::WeightedMorrey:
            if (!(p > 1.0) || !(p <= p0) || !std::isfinite(p0)) fail("requires 1 < p <= p0 < inf");
            if (kind == SpaceKind::WeightedMorrey && !weight) fail("weight missing");
            break;
        case SpaceKind::SmallMorrey:
            if (!(p >= 1.0) || !std::isfinite(p)) fail("requires 1 <= p < inf");
            if (!(lambda > 0.0 && lambda < 1.0)) fail("requires 0 < lambda < 1");
            break;
        case SpaceKind::WeakMp:
            if (!(p > 1.0) || !std::isfinite(p)) fail("requires p > 1");
            break;
    }
    if (weight) {
        for (int i = 0; i <= 32; ++i) {
            const double x = domain.lo + domain.length() * i / 32.0;
            const double v = weight->eval(x);
            if (std::isfinite(v) && v < 0.0) fail("weight takes a negative value");
        }
    }
}

SpaceSpec SpaceSpec::sup(Interval dom) {
    SpaceSpec s;
    s.kind = SpaceKind::Sup;
    s.domain = dom;
    return s;
}

SpaceSpec SpaceSpec::lp(double p, Interval dom) {
    SpaceSpec s;
    s.kind = SpaceKind::Lp;
    s.p = p;
    s.domain = dom;
    return s;
}

SpaceSpec SpaceSpec::weighted_lp(double p, FunctionHandle w) {
    SpaceSpec s;
    s.kind = SpaceKind::WeightedLp;
    s.p = p;
    s.weight = std::move(w);
    return s;
}

SpaceSpec SpaceSpec::grand_lp(double p) {
    SpaceSpec s;
    s.kind = SpaceKind::GrandLp;
    s.p = p;
    return s;
}

SpaceSpec SpaceSpec::weighted_grand_lp(double p, FunctionHandle w) {
    SpaceSpec s;
    s.kind = SpaceKind::WeightedGrandLp;
    s.p = p;
    s.weight = std::move(w);
    return s;
}

SpaceSpec SpaceSpec::variable_lp(FunctionHandle exponent) {
    SpaceSpec s;
    s.kind = SpaceKind::VariableLp;
    s.exponent_fn = std::move(exponent);
    return s;
}

SpaceSpec SpaceSpec::orlicz(FunctionHandle phi) {
    SpaceSpec s;
    s.kind = SpaceKind::Orlicz;
    s.young_phi = std::move(phi);
    return s;
}

SpaceSpec SpaceSpec::morrey(double p, double p0) {
    SpaceSpec s;
    s.kind = SpaceKind::Morrey;
    s.p = p;
    s.p0 = p0;
    return s;
}

SpaceSpec SpaceSpec::weighted_morrey(double p, double p0, FunctionHandle w) {
    SpaceSpec s;
    s.kind = SpaceKind::WeightedMorrey;
    s.p = p;
    s.p0 = p0;
    s.weight = std::move(w);
    return s;
}

SpaceSpec SpaceSpec::small_morrey(double p, double lambda) {
    SpaceSpec s;
    s.kind = SpaceKind::SmallMorrey;
    s.p = p;
    s.lambda = lambda;
    return s;
}

SpaceSpec SpaceSpec::weak_mp(double p) {
    SpaceSpec s;
    s.kind = SpaceKind::WeakMp;
    s.p = p;
    return s;
}

// --- Dispatch ---------------------------------------------------------------

NormResult norm(const SpaceSpec& space, const FunctionHandle& f,
                const QuadratureConfig& cfg) {
    space.validate();
    if (!(f.domain == space.domain)) {
        throw InvalidSpace("norm: function domain does not match space domain (" +
                           f.name + " vs " + space.label() + ")");
    }
    if (is_identically_zero(f)) return {0.0, "zero", 0.0, false};

    std::atomic<bool> clipped{false};
    WeightEval w{space.weight ? &*space.weight : nullptr, &clipped};
    NormResult out;
    switch (space.kind) {
        case SpaceKind::Sup:
            out = sup_kernel(space, f);
            break;
        case SpaceKind::Lp:
        case SpaceKind::WeightedLp:
            out = root_of(power_integral(f, space.p, w, space.domain, cfg), space.p,
                          space.kind == SpaceKind::Lp ? "lp-quadrature" : "weighted-lp-quadrature");
            break;
        case SpaceKind::GrandLp:
            out = grand_kernel(space, f, WeightEval{}, cfg, false);
            break;
        case SpaceKind::WeightedGrandLp:
            out = grand_kernel(space, f, w, cfg, true);
            break;
        case SpaceKind::VariableLp:
            out = variable_kernel(space, f, cfg);
            break;
        case SpaceKind::Orlicz:
            out = orlicz_kernel(space, f, cfg);
            break;
        case SpaceKind::Morrey:
            out = morrey_kernel(space, f, WeightEval{}, cfg, false);
            break;
        case SpaceKind::WeightedMorrey:
            out = morrey_kernel(space, f, w, cfg, true);
            break;
        case SpaceKind::SmallMorrey:
            out = small_morrey_kernel(space, f);
            break;
        case SpaceKind::WeakMp:
            out = weak_mp_kernel(space, f);
            break;
    }
    out.clipped = clipped.load();
    require_finite(out.value, "norm value");
    return out;
}

double fundamental_constant(const SpaceSpec& space, const QuadratureConfig& cfg) {
    return norm(space, make_constant(1.0, space.domain), cfg).value;
}

double muckenhoupt_constant(const FunctionHandle& w, double p, int resolution,
                            const QuadratureConfig& cfg) {
    if (!(p > 1.0)) throw Error("muckenhoupt_constant: requires p > 1");
    const int n = std::max(16, resolution);
    const double h = 1.0 / n;
    const double dual_pow = -1.0 / (p - 1.0);
    std::vector<double> pw(n + 1, 0.0), pd(n + 1, 0.0);
    bool failed = false;
    std::string what;
    std::vector<double> cw(n), cd(n);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (n >= 64)
#endif
    for (int i = 0; i < n; ++i) {
        try {
            auto wi = [&](double x) {
                const double v = w.eval(x);
                require_finite(v, "weight");
                return std::clamp(v, 0.0, kWeightClip);
            };
            auto di = [&](double x) {
                const double v = wi(x);
                return std::min(std::pow(v, dual_pow), kWeightClip);
            };
            cw[i] = integrate(wi, i * h, (i + 1) * h, w.breakpoints, cfg).value;
            cd[i] = integrate(di, i * h, (i + 1) * h, w.breakpoints, cfg).value;
        } catch (const std::exception& e) {
#ifdef _OPENMP
#pragma omp critical(korovkin_muck)
#endif
            {
                failed = true;
                what = e.what();
            }
        }
    }
    if (failed) throw NonFiniteEvaluation("muckenhoupt_constant: " + what);
    for (int i = 0; i < n; ++i) {
        pw[i + 1] = pw[i] + cw[i];
        pd[i + 1] = pd[i] + cd[i];
    }
    auto obj = [&](int i, int j) {
        const double len = (j - i) * h;
        const double avg_w = (pw[j] - pw[i]) / len;
        const double avg_d = (pd[j] - pd[i]) / len;
        return avg_w * std::pow(avg_d, p - 1.0);
    };
    const auto best = kernels::pair_scan_max(n, obj);
    require_finite(best.value, "muckenhoupt constant");
    return best.value;
}

NormResult shift_deviation(const SpaceSpec& space, const FunctionHandle& f,
                           double delta, const QuadratureConfig& cfg) {
    if (!(delta > 0.0 && delta < 1.0)) throw Error("shift_deviation: need 0 < delta < 1");
    if (!(space.domain == unit_interval)) {
        throw InvalidSpace("shift_deviation: space must live on [0,1]");
    }
    FunctionHandle g;
    g.name = "shift(" + f.name + "," + std::to_string(delta) + ")";
    g.domain = unit_interval;
    g.eval = [fe = f.eval, delta](double x) {
        return x + delta <= 1.0 ? fe(x + delta) - fe(x) : -fe(x);
    };
    g.breakpoints = f.breakpoints;
    g.breakpoints.push_back(1.0 - delta);
    for (double b : f.breakpoints) {
        const double shifted = b - delta;
        if (shifted > 0.0 && shifted < 1.0) g.breakpoints.push_back(shifted);
    }
    return norm(space, g, cfg);
}

FunctionHandle make_young_power(double p) {
    if (!(p > 1.0)) throw Error("young power: requires p > 1");
    FunctionHandle phi;
    std::ostringstream n;
    n << "power(" << p << ")";
    phi.name = n.str();
    phi.domain = {0.0, 1e6};
    phi.eval = [p](double t) { return std::pow(std::max(0.0, t), p) / p; };
    phi.derivative = [p](double t) { return std::pow(std::max(0.0, t), p - 1.0); };
    return phi;
}

// --- Orlicz dual cross-check --------------------------------------------------

namespace {

/// Complementary Young function by Legendre transform, tabulated on a grid.
class ComplementaryYoung {
  public:
    ComplementaryYoung(const FunctionHandle& phi, double s_max)
        : s_max_(std::max(s_max, 1e-6)) {
        const int nodes = 2048;
        table_.resize(nodes + 1);
        for (int i = 0; i <= nodes; ++i) {
            const double s = s_max_ * i / nodes;
            table_[i] = transform(phi, s);
        }
    }

    double operator()(double s) const {
        if (s <= 0.0) return 0.0;
        const double pos = std::min(s, s_max_) / s_max_ * (table_.size() - 1);
        const std::size_t i = std::min(table_.size() - 2, static_cast<std::size_t>(pos));
        const double frac = pos - i;
        double v = table_[i] * (1.0 - frac) + table_[i + 1] * frac;
        if (s > s_max_) {
            // Convexity: extrapolate with the last chord slope (understates,
            // which keeps the dual estimate a lower bound).
            const double slope = (table_.back() - table_[table_.size() - 2]) /
                                 (s_max_ / (table_.size() - 1));
            v = table_.back() + slope * (s - s_max_);
        }
        return v;
    }

  private:
    static double transform(const FunctionHandle& phi, double s) {
        if (s <= 0.0) return 0.0;
        double t_hi = 1.0;
        auto g = [&](double t) { return s * t - phi.eval(t); };
        while (g(t_hi * 2.0) > g(t_hi) && t_hi < 1e12) t_hi *= 2.0;
        const auto r = golden_max(g, 0.0, 2.0 * t_hi, 80);
        return std::max(0.0, r.value);
    }

    double s_max_;
    std::vector<double> table_;
};

} // namespace

double orlicz_dual_estimate(const SpaceSpec& space, const FunctionHandle& f,
                            int resolution) {
    space.validate();
    if (space.kind != SpaceKind::Orlicz) {
        throw InvalidSpace("orlicz_dual_estimate: space is not an Orlicz space");
    }
    const SampledFunction s = sample(f, resolution);
    std::vector<double> v(s.values.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::abs(s.values[i]);
    const double vmax = *std::max_element(v.begin(), v.end());
    if (vmax == 0.0) return 0.0;
    const int n = static_cast<int>(v.size());

    // Candidate profiles: powers of |f| (layer-cake combinations of its
    // super-level sets) plus plain super-level indicators.
    std::vector<std::vector<double>> profiles;
    for (double theta : {0.5, 1.0, 2.0}) {
        std::vector<double> g(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) g[i] = std::pow(v[i] / vmax, theta);
        profiles.push_back(std::move(g));
    }
    std::vector<double> sorted = v;
    std::sort(sorted.begin(), sorted.end());
    for (int j = 0; j < 16; ++j) {
        const double level = sorted[static_cast<std::size_t>((j + 0.5) / 16.0 * (n - 1))];
        std::vector<double> g(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) g[i] = v[i] >= level ? 1.0 : 0.0;
        profiles.push_back(std::move(g));
    }

    const ComplementaryYoung psi(*space.young_phi, 64.0 * vmax);
    double best = 0.0;
    for (const auto& g0 : profiles) {
        auto modular = [&](double c) {
            double acc = 0.0;
            for (double gi : g0) acc += psi(c * gi);
            return acc / n;
        };
        double lo = 0.0, hi = 1.0;
        while (modular(hi) < 1.0 && hi < 1e12) hi *= 2.0;
        if (hi >= 1e12) continue;
        for (int it = 0; it < 60; ++it) {
            const double mid = 0.5 * (lo + hi);
            (modular(mid) < 1.0 ? lo : hi) = mid;
        }
        double pairing = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i) pairing += lo * g0[i] * v[i];
        best = std::max(best, pairing / n);
    }
    return best;
}

} // namespace korovkin
