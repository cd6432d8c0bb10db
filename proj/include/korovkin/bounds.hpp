#pragma once

#include <span>
#include <string>
#include <vector>

#include "korovkin/modulus.hpp"
#include "korovkin/operators.hpp"
#include "korovkin/spaces.hpp"

namespace korovkin {

enum class BoundFlavor { ShishaMond, DeVore, TrigShishaMond, TrigDeVore };

std::string to_string(BoundFlavor flavor);
BoundFlavor bound_flavor_from_string(const std::string& s);

/// All terms of one evaluated inequality: the measured left-hand side, the
/// assembled right-hand side, and the verdict with its error budget.
struct BoundReport {
    std::string function;
    std::string space;
    BoundFlavor flavor = BoundFlavor::ShishaMond;
    int n = 0;

    double lhs = 0.0;         // ||L_n f - f||_X
    double mu_n = 0.0;
    double omega_val = 0.0;   // omega(f, mu_n) or omega(f', mu_n)
    double term_unital = 0.0; // ||f||_inf * ||L_n 1 - 1||_X
    double term_drift = 0.0;  // sqrt(c) * mu_n * ||f'||_inf (DeVore flavors)
    double term_main = 0.0;
    double rhs = 0.0;         // term_unital + term_drift + term_main
    double c_norm = 0.0;      // ||L_n 1||_X

    bool holds = false;        // lhs <= rhs + est_error
    bool holds_strict = false; // lhs <= rhs with raw values
    double ratio = 0.0;        // lhs / rhs (0 when rhs == 0)
    double est_error = 0.0;    // combined error budget for the comparison
};

struct BoundOptions {
    QuadratureConfig quad{};
    int modulus_resolution = 1024; // starting grid for the modulus estimator
    int sup_resolution = 4096;     // grid for the sup-norm terms
};

struct MuResult {
    double value = 0.0;
    double err = 0.0;
};

/// mu_n for the space/operator pair: sqrt of the norm of the second central
/// moment function, or for periodic operators pi * sqrt of the norm of
/// L_n(sin^2((x-.)/2))(x).
MuResult mu_n_detailed(const SpaceSpec& space, const OperatorSpec& op,
                       const QuadratureConfig& cfg = {});
double mu_n(const SpaceSpec& space, const OperatorSpec& op,
            const QuadratureConfig& cfg = {});

BoundReport shisha_mond_bound(const SpaceSpec& space, const OperatorSpec& op,
                              const FunctionHandle& f, const BoundOptions& opts = {});

BoundReport devore_bound(const SpaceSpec& space, const OperatorSpec& op,
                         const FunctionHandle& f, const BoundOptions& opts = {});

BoundReport trig_bound(const SpaceSpec& space, const OperatorSpec& op,
                       const FunctionHandle& f, BoundFlavor flavor,
                       const BoundOptions& opts = {});

/// Dispatch on flavor.
BoundReport evaluate_bound(const SpaceSpec& space, const OperatorSpec& op,
                           const FunctionHandle& f, BoundFlavor flavor,
                           const BoundOptions& opts = {});

struct SlopeFit {
    double slope = 0.0;
    double intercept = 0.0;
    double residual_rms = 0.0;
    bool defined = false;
    bool excluded_first = false;
};

struct RateReport {
    std::vector<int> n_values;
    std::vector<double> lhs_values;
    std::vector<double> rhs_values;
    std::vector<double> mu_values;
    SlopeFit slope_lhs;
    SlopeFit slope_rhs;
    std::vector<BoundReport> reports;
};

/// Runs the chosen bound over the n sweep and fits log-log slopes of both
/// sides against log(n+1).
RateReport rate_sweep(const SpaceSpec& space, const OperatorSpec& op_template,
                      const FunctionHandle& f, std::span<const int> n_values,
                      BoundFlavor flavor, const BoundOptions& opts = {});

/// Least-squares slope of log(values) vs log(n+1); undefined when any value
/// is nonpositive. Drops the smallest n when its residual exceeds 3x the
/// fit RMS.
SlopeFit fit_loglog_slope(std::span<const int> n_values, std::span<const double> values);

} // namespace korovkin
