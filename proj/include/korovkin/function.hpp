#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "korovkin/common.hpp"

namespace korovkin {

/// An evaluable real function on a stated interval, with optional metadata
/// consumed by the norm, modulus and bound machinery.
struct FunctionHandle {
    std::string name;
    Interval domain = unit_interval;
    std::function<double(double)> eval;
    std::function<double(double)> derivative; // empty when unknown
    std::optional<double> lipschitz;
    bool periodic = false; // 2*pi-periodic extension; domain must be [-pi, pi]
    /// Interior kink locations, forwarded to quadrature as panel splits.
    std::vector<double> breakpoints;

    double operator()(double x) const { return eval(x); }
    bool has_derivative() const { return static_cast<bool>(derivative); }

    /// The derivative as a standalone handle. Throws MissingDerivative.
    FunctionHandle derivative_handle() const;
};

/// Midpoint samples of a function: values[i] is taken at the midpoint of
/// cell i of a uniform grid_size-cell split of the domain.
struct SampledFunction {
    Interval domain = unit_interval;
    std::vector<double> values;

    int grid_size() const { return static_cast<int>(values.size()); }
    double cell_width() const { return domain.length() / static_cast<double>(values.size()); }
};

SampledFunction sample(const FunctionHandle& f, int grid_size);

/// |values| sorted nonincreasing, on the same grid. Equimeasurable with
/// |input| at grid resolution.
SampledFunction decreasing_rearrangement(const SampledFunction& s);

/// Checks the FunctionHandle invariants by sampling: finite evaluations,
/// derivative consistent with a central finite difference, periodic endpoint
/// match. Throws on violation.
void validate(const FunctionHandle& f, int probe_resolution = 257, double derivative_tol = 1e-3);

// --- Builtin function library --------------------------------------------

FunctionHandle make_constant(double c, Interval domain = unit_interval);
FunctionHandle make_monomial(int k);
FunctionHandle make_sqrt();
FunctionHandle make_abs_shift();          // |x - 1/2|
FunctionHandle make_smoothstep();         // x^2 (3 - 2x)
FunctionHandle make_steep_step();         // logistic step centered at 1/2
FunctionHandle make_sin_smooth();         // sin(pi x) on [0,1]
FunctionHandle make_hat();                // 1 - |2x - 1|
FunctionHandle make_parabola_bump();      // x (1 - x)
FunctionHandle make_exp_ramp();           // (e^x - 1)/(e - 1)
FunctionHandle make_affine(double a, double b); // a x + b
FunctionHandle make_power(double alpha);  // x^alpha (weight building block)

FunctionHandle make_cos();                // cos x on [-pi, pi], periodic
FunctionHandle make_sin();
FunctionHandle make_cos2x();

/// Piecewise polynomial: on [breaks[i], breaks[i+1]) the value is
/// sum_j coeffs[i][j] * x^j. breaks must be increasing and span the domain.
FunctionHandle make_piecewise_polynomial(std::string name,
                                         std::vector<double> breaks,
                                         std::vector<std::vector<double>> coeffs);

/// Look up a builtin by descriptor name, e.g. "x", "x2", "sqrt", "cos",
/// "monomial(3)", "affine(2,0.5)", "power(0.5)", "const(2)".
FunctionHandle builtin_function(const std::string& descriptor);

/// The 12-function corpus on [0,1] used by the property suites.
const std::vector<FunctionHandle>& corpus_unit();

/// Periodic corpus on [-pi, pi]: 1, cos, sin, cos 2x.
const std::vector<FunctionHandle>& corpus_periodic();

/// Sampled sup of |f| over an inclusive uniform grid (plus breakpoints),
/// with a Lipschitz-aware slack estimate when the constant is known.
struct SupEstimate {
    double value = 0.0;
    double slack = 0.0;
};
SupEstimate sup_norm_estimate(const FunctionHandle& f, int resolution = 4096);

} // namespace korovkin
