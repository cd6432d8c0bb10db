#pragma once

#include <optional>
#include <string>

#include "korovkin/function.hpp"
#include "korovkin/quadrature.hpp"

namespace korovkin {

enum class SpaceKind {
    Sup,
    Lp,
    WeightedLp,
    GrandLp,
    WeightedGrandLp,
    VariableLp,
    Orlicz,
    Morrey,
    WeightedMorrey,
    SmallMorrey,
    WeakMp,
};

/// One of the supported Banach function space norms plus its parameters.
/// Immutable after validate(); concurrent norm evaluations over a shared
/// spec are safe.
struct SpaceSpec {
    SpaceKind kind = SpaceKind::Lp;
    double p = 2.0;
    double p0 = 2.0;      // Morrey kinds, p <= p0
    double lambda = 0.5;  // SmallMorrey, in (0,1)
    std::optional<FunctionHandle> weight;      // weighted kinds
    std::optional<FunctionHandle> exponent_fn; // VariableLp
    std::optional<FunctionHandle> young_phi;   // Orlicz
    int resolution = 1024;
    Interval domain = unit_interval;

    std::string label() const;
    void validate() const; // throws InvalidSpace

    static SpaceSpec sup(Interval dom = unit_interval);
    static SpaceSpec lp(double p, Interval dom = unit_interval);
    static SpaceSpec weighted_lp(double p, FunctionHandle w);
    static SpaceSpec grand_lp(double p);
    static SpaceSpec weighted_grand_lp(double p, FunctionHandle w);
    static SpaceSpec variable_lp(FunctionHandle exponent);
    static SpaceSpec orlicz(FunctionHandle phi);
    static SpaceSpec morrey(double p, double p0);
    static SpaceSpec weighted_morrey(double p, double p0, FunctionHandle w);
    static SpaceSpec small_morrey(double p, double lambda);
    static SpaceSpec weak_mp(double p);
};

struct NormResult {
    double value = 0.0;
    std::string method;
    double est_error = 0.0;
    /// Set when weight evaluations had to be clipped into [0, 1e12].
    bool clipped = false;
};

/// ||f||_X for the given space; dispatches to the kind-specific kernel.
NormResult norm(const SpaceSpec& space, const FunctionHandle& f,
                const QuadratureConfig& cfg = {});

/// ||1||_X, the constant that embeds the sup norm into the space norm.
double fundamental_constant(const SpaceSpec& space, const QuadratureConfig& cfg = {});

/// Muckenhoupt A_p constant of w over subintervals on the resolution grid:
/// max over E of (avg_E w) * (avg_E w^(-1/(p-1)))^(p-1).
double muckenhoupt_constant(const FunctionHandle& w, double p, int resolution,
                            const QuadratureConfig& cfg = {});

/// || T_delta f - f ||_X with the zero-extension shift convention.
NormResult shift_deviation(const SpaceSpec& space, const FunctionHandle& f,
                           double delta, const QuadratureConfig& cfg = {});

/// Slow dual-form Orlicz estimate: maximizes integral of |f| g over a finite
/// family of candidates g assembled from scaled super-level indicators of
/// |f|, with the complementary Young function computed numerically. Kept as
/// a cross-check for the Amemiya kernel.
double orlicz_dual_estimate(const SpaceSpec& space, const FunctionHandle& f,
                            int resolution = 256);

/// Young function building block: Phi(t) = t^p / p.
FunctionHandle make_young_power(double p);

} // namespace korovkin
