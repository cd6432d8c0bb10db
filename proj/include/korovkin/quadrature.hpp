#pragma once

#include <functional>
#include <span>
#include <vector>

#include "korovkin/common.hpp"

namespace korovkin {

struct QuadratureConfig {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    int max_depth = 30;
};

struct QuadratureResult {
    double value = 0.0;
    double err_est = 0.0;
    /// True when some subinterval hit max_depth before meeting its tolerance;
    /// value still carries the best available estimate.
    bool depth_exceeded = false;
};

using RealFunction = std::function<double(double)>;

/// Adaptive quadrature of f over [a, b]: composite 7-point Gauss-Legendre
/// panels with interval halving until the halving error estimate meets
/// max(abs_tol, rel_tol * |whole|).
///
/// Throws NonFiniteEvaluation if f returns NaN/inf at a node.
QuadratureResult integrate(const RealFunction& f, double a, double b,
                           const QuadratureConfig& cfg = {});

/// Same, but splits [a, b] at the given interior breakpoints first. Points
/// outside (a, b) are ignored; this is the entry point for piecewise-smooth
/// integrands with known kinks.
QuadratureResult integrate(const RealFunction& f, double a, double b,
                           std::span<const double> breakpoints,
                           const QuadratureConfig& cfg = {});

} // namespace korovkin
