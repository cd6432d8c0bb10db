#include "korovkin/function.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "korovkin/kernels.hpp"

namespace korovkin {

FunctionHandle FunctionHandle::derivative_handle() const {
    if (!derivative) throw MissingDerivative("function '" + name + "' has no derivative rule");
    FunctionHandle d;
    d.name = name + "'";
    d.domain = domain;
    d.eval = derivative;
    d.periodic = periodic;
    d.breakpoints = breakpoints;
    return d;
}

SampledFunction sample(const FunctionHandle& f, int grid_size) {
    if (grid_size < 1) throw Error("sample: grid_size must be >= 1");
    const double h = f.domain.length() / grid_size;
    std::vector<double> xs(grid_size);
    for (int i = 0; i < grid_size; ++i) xs[i] = f.domain.lo + (i + 0.5) * h;
    SampledFunction s;
    s.domain = f.domain;
    s.values = kernels::map_grid(f.eval, xs);
    return s;
}

SampledFunction decreasing_rearrangement(const SampledFunction& s) {
    SampledFunction out = s;
    for (double& v : out.values) v = std::abs(v);
    std::sort(out.values.begin(), out.values.end(), std::greater<>());
    return out;
}

void validate(const FunctionHandle& f, int probe_resolution, double derivative_tol) {
    if (!f.eval) throw Error("function '" + f.name + "' has no evaluation rule");
    if (f.lipschitz && *f.lipschitz < 0) throw Error("function '" + f.name + "' has negative Lipschitz constant");
    if (f.periodic && f.domain != periodic_interval) {
        throw NotPeriodic("function '" + f.name + "' marked periodic but domain is not [-pi, pi]");
    }
    const double h = f.domain.length() / probe_resolution;
    for (int i = 0; i <= probe_resolution; ++i) {
        const double x = f.domain.lo + i * h;
        require_finite(f.eval(x), f.name.c_str());
    }
    if (f.derivative) {
        // Central finite difference at interior grid points, skipping the
        // immediate neighborhood of declared breakpoints.
        const double step = h * 0.5;
        for (int i = 2; i < probe_resolution - 1; ++i) {
            const double x = f.domain.lo + i * h;
            bool near_kink = false;
            for (double b : f.breakpoints) {
                if (std::abs(x - b) < 2 * step) near_kink = true;
            }
            if (near_kink) continue;
            const double fd = (f.eval(x + step) - f.eval(x - step)) / (2 * step);
            const double dv = f.derivative(x);
            require_finite(dv, (f.name + " derivative").c_str());
            const double scale = std::max(1.0, std::abs(dv));
            if (std::abs(fd - dv) > derivative_tol * scale + derivative_tol) {
                std::ostringstream msg;
                msg << "function '" << f.name << "': derivative mismatch at x = " << x
                    << " (finite difference " << fd << ", rule " << dv << ")";
                throw Error(msg.str());
            }
        }
    }
    if (f.periodic) {
        const double a = f.eval(f.domain.lo), b = f.eval(f.domain.hi);
        if (std::abs(a - b) > 1e-9 * std::max(1.0, std::abs(a))) {
            throw NotPeriodic("function '" + f.name + "': endpoint values differ");
        }
    }
}

// --- Builtins --------------------------------------------------------------

FunctionHandle make_constant(double c, Interval domain) {
    FunctionHandle f;
    f.name = (c == 1.0) ? "one" : "const(" + std::to_string(c) + ")";
    f.domain = domain;
    f.eval = [c](double) { return c; };
    f.derivative = [](double) { return 0.0; };
    f.lipschitz = 0.0;
    f.periodic = (domain == periodic_interval);
    return f;
}

FunctionHandle make_monomial(int k) {
    if (k < 0) throw Error("monomial exponent must be >= 0");
    FunctionHandle f;
    f.name = (k == 1) ? "x" : "x" + std::to_string(k);
    f.eval = [k](double x) { return std::pow(x, k); };
    f.derivative = [k](double x) { return k == 0 ? 0.0 : k * std::pow(x, k - 1); };
    f.lipschitz = static_cast<double>(k);
    return f;
}

FunctionHandle make_sqrt() {
    FunctionHandle f;
    f.name = "sqrt";
    f.eval = [](double x) { return std::sqrt(std::max(0.0, x)); };
    // Unbounded slope at 0: no derivative rule, no Lipschitz constant.
    return f;
}

FunctionHandle make_abs_shift() {
    FunctionHandle f;
    f.name = "absshift";
    f.eval = [](double x) { return std::abs(x - 0.5); };
    f.lipschitz = 1.0;
    f.breakpoints = {0.5};
    return f;
}

FunctionHandle make_smoothstep() {
    FunctionHandle f;
    f.name = "smoothstep";
    f.eval = [](double x) { return x * x * (3.0 - 2.0 * x); };
    f.derivative = [](double x) { return 6.0 * x * (1.0 - x); };
    f.lipschitz = 1.5;
    return f;
}

FunctionHandle make_steep_step() {
    FunctionHandle f;
    f.name = "steepstep";
    constexpr double k = 20.0;
    f.eval = [](double x) { return 1.0 / (1.0 + std::exp(-k * (x - 0.5))); };
    f.derivative = [](double x) {
        const double s = 1.0 / (1.0 + std::exp(-k * (x - 0.5)));
        return k * s * (1.0 - s);
    };
    f.lipschitz = k / 4.0;
    return f;
}

FunctionHandle make_sin_smooth() {
    FunctionHandle f;
    f.name = "sinsmooth";
    f.eval = [](double x) { return std::sin(std::numbers::pi * x); };
    f.derivative = [](double x) { return std::numbers::pi * std::cos(std::numbers::pi * x); };
    f.lipschitz = std::numbers::pi;
    return f;
}

FunctionHandle make_hat() {
    FunctionHandle f;
    f.name = "hat";
    f.eval = [](double x) { return 1.0 - std::abs(2.0 * x - 1.0); };
    f.lipschitz = 2.0;
    f.breakpoints = {0.5};
    return f;
}

FunctionHandle make_parabola_bump() {
    FunctionHandle f;
    f.name = "bump";
    f.eval = [](double x) { return x * (1.0 - x); };
    f.derivative = [](double x) { return 1.0 - 2.0 * x; };
    f.lipschitz = 1.0;
    return f;
}

FunctionHandle make_exp_ramp() {
    FunctionHandle f;
    f.name = "expramp";
    const double scale = 1.0 / (std::numbers::e - 1.0);
    f.eval = [scale](double x) { return (std::exp(x) - 1.0) * scale; };
    f.derivative = [scale](double x) { return std::exp(x) * scale; };
    f.lipschitz = std::numbers::e * scale;
    return f;
}

FunctionHandle make_affine(double a, double b) {
    FunctionHandle f;
    std::ostringstream n;
    n << "affine(" << a << "," << b << ")";
    f.name = n.str();
    f.eval = [a, b](double x) { return a * x + b; };
    f.derivative = [a](double) { return a; };
    f.lipschitz = std::abs(a);
    return f;
}

FunctionHandle make_power(double alpha) {
    if (alpha < 0) throw Error("power weight exponent must be >= 0");
    FunctionHandle f;
    std::ostringstream n;
    n << "power(" << alpha << ")";
    f.name = n.str();
    f.eval = [alpha](double x) { return std::pow(std::max(0.0, x), alpha); };
    return f;
}

FunctionHandle make_cos() {
    FunctionHandle f;
    f.name = "cos";
    f.domain = periodic_interval;
    f.eval = [](double x) { return std::cos(x); };
    f.derivative = [](double x) { return -std::sin(x); };
    f.lipschitz = 1.0;
    f.periodic = true;
    return f;
}

FunctionHandle make_sin() {
    FunctionHandle f;
    f.name = "sin";
    f.domain = periodic_interval;
    f.eval = [](double x) { return std::sin(x); };
    f.derivative = [](double x) { return std::cos(x); };
    f.lipschitz = 1.0;
    f.periodic = true;
    return f;
}

FunctionHandle make_cos2x() {
    FunctionHandle f;
    f.name = "cos2x";
    f.domain = periodic_interval;
    f.eval = [](double x) { return std::cos(2.0 * x); };
    f.derivative = [](double x) { return -2.0 * std::sin(2.0 * x); };
    f.lipschitz = 2.0;
    f.periodic = true;
    return f;
}

FunctionHandle make_piecewise_polynomial(std::string name, std::vector<double> breaks,
                                         std::vector<std::vector<double>> coeffs) {
    if (breaks.size() < 2 || coeffs.size() + 1 != breaks.size()) {
        throw Error("piecewise polynomial: need k+1 breakpoints for k pieces");
    }
    if (!std::is_sorted(breaks.begin(), breaks.end())) {
        throw Error("piecewise polynomial: breakpoints must be increasing");
    }
    FunctionHandle f;
    f.name = std::move(name);
    f.domain = {breaks.front(), breaks.back()};
    f.breakpoints.assign(breaks.begin() + 1, breaks.end() - 1);
    f.eval = [breaks = std::move(breaks), coeffs = std::move(coeffs)](double x) {
        auto it = std::upper_bound(breaks.begin(), breaks.end(), x);
        std::size_t piece = (it == breaks.begin()) ? 0 : static_cast<std::size_t>(it - breaks.begin()) - 1;
        piece = std::min(piece, coeffs.size() - 1);
        double acc = 0.0;
        const auto& c = coeffs[piece];
        for (std::size_t j = c.size(); j-- > 0;) acc = acc * x + c[j];
        return acc;
    };
    return f;
}

namespace {

std::vector<double> parse_args(const std::string& s) {
    std::vector<double> args;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (!tok.empty()) args.push_back(std::stod(tok));
    }
    return args;
}

} // namespace

FunctionHandle builtin_function(const std::string& descriptor) {
    const auto paren = descriptor.find('(');
    std::string name = descriptor.substr(0, paren);
    std::vector<double> args;
    if (paren != std::string::npos) {
        const auto close = descriptor.rfind(')');
        if (close == std::string::npos || close < paren) {
            throw Error("malformed function descriptor: " + descriptor);
        }
        args = parse_args(descriptor.substr(paren + 1, close - paren - 1));
    }
    auto want = [&](std::size_t k) {
        if (args.size() != k) throw Error("descriptor '" + descriptor + "' expects " + std::to_string(k) + " argument(s)");
    };
    if (name == "one") { want(0); return make_constant(1.0); }
    if (name == "const") { want(1); return make_constant(args[0]); }
    if (name == "x") { want(0); return make_monomial(1); }
    if (name == "x2") { want(0); return make_monomial(2); }
    if (name == "x3") { want(0); return make_monomial(3); }
    if (name == "monomial") { want(1); return make_monomial(static_cast<int>(args[0])); }
    if (name == "sqrt") { want(0); return make_sqrt(); }
    if (name == "absshift") { want(0); return make_abs_shift(); }
    if (name == "smoothstep") { want(0); return make_smoothstep(); }
    if (name == "steepstep") { want(0); return make_steep_step(); }
    if (name == "sinsmooth") { want(0); return make_sin_smooth(); }
    if (name == "hat") { want(0); return make_hat(); }
    if (name == "bump") { want(0); return make_parabola_bump(); }
    if (name == "expramp") { want(0); return make_exp_ramp(); }
    if (name == "affine") { want(2); return make_affine(args[0], args[1]); }
    if (name == "power") { want(1); return make_power(args[0]); }
    if (name == "cos") { want(0); return make_cos(); }
    if (name == "sin") { want(0); return make_sin(); }
    if (name == "cos2x") { want(0); return make_cos2x(); }
    throw Error("unknown function descriptor: " + descriptor);
}

const std::vector<FunctionHandle>& corpus_unit() {
    static const std::vector<FunctionHandle> corpus = [] {
        std::vector<FunctionHandle> c;
        c.push_back(make_constant(1.0));
        c.push_back(make_monomial(1));
        c.push_back(make_monomial(2));
        c.push_back(make_monomial(3));
        c.push_back(make_sqrt());
        c.push_back(make_abs_shift());
        c.push_back(make_smoothstep());
        c.push_back(make_steep_step());
        c.push_back(make_sin_smooth());
        c.push_back(make_hat());
        c.push_back(make_parabola_bump());
        c.push_back(make_exp_ramp());
        return c;
    }();
    return corpus;
}

const std::vector<FunctionHandle>& corpus_periodic() {
    static const std::vector<FunctionHandle> corpus = [] {
        std::vector<FunctionHandle> c;
        c.push_back(make_constant(1.0, periodic_interval));
        c.push_back(make_cos());
        c.push_back(make_sin());
        c.push_back(make_cos2x());
        return c;
    }();
    return corpus;
}

SupEstimate sup_norm_estimate(const FunctionHandle& f, int resolution) {
    const double h = f.domain.length() / resolution;
    std::vector<double> xs;
    xs.reserve(resolution + 1 + f.breakpoints.size());
    for (int i = 0; i <= resolution; ++i) xs.push_back(f.domain.lo + i * h);
    for (double b : f.breakpoints) {
        if (f.domain.contains(b)) xs.push_back(b);
    }
    const auto vals = kernels::map_grid(f.eval, xs);
    double m = 0.0;
    for (double v : vals) m = std::max(m, std::abs(v));
    SupEstimate est;
    est.value = m;
    if (f.lipschitz) {
        est.slack = *f.lipschitz * h / 2.0;
    } else {
        // Heuristic slack from the steepest sampled slope.
        double slope = 0.0;
        for (int i = 0; i + 1 <= resolution; ++i) {
            slope = std::max(slope, std::abs(vals[i + 1] - vals[i]) / h);
        }
        est.slack = slope * h / 2.0;
    }
    return est;
}

} // namespace korovkin
