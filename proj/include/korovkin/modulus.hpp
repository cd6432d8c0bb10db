#pragma once

#include <span>
#include <vector>

#include "korovkin/function.hpp"

namespace korovkin {

struct ModulusEstimate {
    double delta = 0.0;
    double value = 0.0;
    int resolution = 0;   // final grid resolution after refinement
    bool converged = false;
};

/// Estimates the modulus of continuity: sup |f(x) - f(y)| over pairs in the
/// domain with |x - y| <= delta (circular distance for periodic f). Sliding
/// min/max windows over a uniform grid, refined x2 until the value moves by
/// less than 1e-6 or the grid reaches 2^20 points. The estimate is a lower
/// bound on the true modulus; for Lipschitz f it is within L * 2/resolution.
ModulusEstimate modulus_of_continuity(const FunctionHandle& f, double delta,
                                      int resolution = 64);

std::vector<ModulusEstimate> modulus_profile(const FunctionHandle& f,
                                             std::span<const double> deltas,
                                             int resolution = 64);

/// Two-sided error allowance for an estimate: Lipschitz-based when the
/// constant is known, otherwise the steepest sampled slope stands in.
double modulus_slack(const FunctionHandle& f, const ModulusEstimate& est);

/// Single-resolution windowed estimate, no refinement ladder.
double modulus_at_resolution(const FunctionHandle& f, double delta, int resolution);

/// Brute-force all-pairs reference, kept as the oracle for the windowed
/// estimator. O(N^2 delta); intended for N <= 4096.
double modulus_all_pairs(const FunctionHandle& f, double delta, int resolution);

} // namespace korovkin
