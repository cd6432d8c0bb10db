#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "korovkin/function.hpp"
#include "korovkin/quadrature.hpp"

namespace korovkin {

enum class OperatorKind { Kantorovich, Fejer, Custom };

/// A positive linear operator family member: Kantorovich polynomial K_n on
/// [0,1], the Fejer mean sigma_n on 2*pi-periodic functions, or a custom
/// positive rule supplied by the caller.
struct OperatorSpec {
    OperatorKind kind = OperatorKind::Kantorovich;
    int n = 1;
    std::function<double(const FunctionHandle&, double)> custom_apply;
    bool custom_is_unital = false;
    std::string custom_name;

    Interval domain() const {
        return kind == OperatorKind::Fejer ? periodic_interval : unit_interval;
    }
    bool unital() const {
        return kind != OperatorKind::Custom || custom_is_unital;
    }
    std::string label() const;
    OperatorSpec with_n(int degree) const {
        OperatorSpec o = *this;
        o.n = degree;
        return o;
    }
};

OperatorSpec kantorovich(int n);
OperatorSpec fejer(int n);

/// Registers a custom rule. Positivity is probed at registration: each
/// nonnegative probe function must map to values >= -10 * abs_tol on a
/// 33-point grid. Throws Error if the probe fails.
OperatorSpec custom_operator(std::string name,
                             std::function<double(const FunctionHandle&, double)> apply_rule,
                             bool is_unital,
                             const QuadratureConfig& cfg = {});

/// Bernstein basis weights C(n,k) x^k (1-x)^(n-k), k = 0..n. Multiplicative
/// recurrence seeded in log space for large n; no raw factorials.
std::vector<double> bernstein_weights(int n, double x);

/// Integrals of f over the n+1 Kantorovich cells [k/(n+1), (k+1)/(n+1)].
/// Computing these once per (f, n) and reusing them across evaluation points
/// is the memoization surface the bound evaluators rely on.
std::vector<double> kantorovich_cell_integrals(const FunctionHandle& f, int n,
                                               const QuadratureConfig& cfg = {});

/// K_n(f)(x) from precomputed cell integrals.
double kantorovich_apply_cells(std::span<const double> cells, int n, double x);

/// K_n(f)(x) = (n+1) sum_k C(n,k) x^k (1-x)^(n-k) * integral of f over cell k.
double kantorovich_apply(const FunctionHandle& f, int n, double x,
                         const QuadratureConfig& cfg = {});

/// Closed-form moments of the Kantorovich operator.
double kantorovich_moment1(int n, double x);        // K_n(t)(x)
double kantorovich_moment2(int n, double x);        // K_n(t^2)(x)
double kantorovich_second_central(int n, double x); // K_n((x-t)^2)(x)

/// Fejer kernel F_n(u), 2*pi-periodic, with a series fallback near the
/// removable singularity at u = 0 (mod 2*pi).
double fejer_kernel(int n, double u);

/// Fejer mean sigma_n(f)(x) = (1/2*pi) * integral of f(t) F_n(x-t) dt over a
/// full period, evaluated with panel splits at the kernel zeros.
double fejer_apply(const FunctionHandle& f, int n, double x,
                   const QuadratureConfig& cfg = {});

/// Dispatch to the matching concrete operator.
double apply(const OperatorSpec& op, const FunctionHandle& f, double x,
             const QuadratureConfig& cfg = {});

/// L_n(f) as a function handle. For Kantorovich the cell integrals are
/// computed once and shared by all evaluations.
FunctionHandle apply_as_function(const OperatorSpec& op, const FunctionHandle& f,
                                 const QuadratureConfig& cfg = {});

/// L_n(f) - f as a function handle (the bound left-hand side integrand).
FunctionHandle operator_residual(const OperatorSpec& op, const FunctionHandle& f,
                                 const QuadratureConfig& cfg = {});

} // namespace korovkin
