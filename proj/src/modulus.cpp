#include "korovkin/modulus.hpp"

#include <algorithm>
#include <cmath>

#include "korovkin/kernels.hpp"

namespace korovkin {

namespace {

constexpr int kMaxResolution = 1 << 20;
constexpr double kConvergenceTol = 1e-6;

std::vector<double> grid_values(const FunctionHandle& f, int resolution, bool periodic) {
    std::vector<double> xs;
    if (periodic) {
        // R points over [-pi, pi); the right endpoint duplicates the left.
        xs.resize(resolution);
        const double h = f.domain.length() / resolution;
        for (int i = 0; i < resolution; ++i) xs[i] = f.domain.lo + i * h;
    } else {
        xs.resize(resolution + 1);
        const double h = f.domain.length() / resolution;
        for (int i = 0; i <= resolution; ++i) xs[i] = f.domain.lo + i * h;
    }
    return kernels::map_grid(f.eval, xs);
}

int window_width(double delta, double h, int resolution, bool periodic) {
    int w = static_cast<int>(std::floor(delta / h * (1.0 + 1e-12) + 1e-12));
    const int cap = periodic ? resolution / 2 : resolution;
    return std::clamp(w, 0, cap);
}

double window_estimate(const std::vector<double>& vals, int w, bool periodic) {
    if (w == 0) return 0.0;
    if (periodic) {
        // Wrap: linear windows on the extended array cover circular pairs.
        std::vector<double> ext = vals;
        ext.insert(ext.end(), vals.begin(), vals.begin() + w);
        return kernels::window_range_max(ext, w);
    }
    return kernels::window_range_max(vals, w);
}

double estimate_at(const FunctionHandle& f, double delta, int resolution) {
    const double h = f.domain.length() / resolution;
    const int w = window_width(delta, h, resolution, f.periodic);
    return window_estimate(grid_values(f, resolution, f.periodic), w, f.periodic);
}

/// Lower estimate (grid pairs at distance <= delta) plus an upper companion
/// one grid step wider; monotonicity of the modulus sandwiches the true
/// value between them.
struct Sandwich {
    double lower = 0.0;
    double upper = 0.0;
};

Sandwich sandwich_at(const FunctionHandle& f, double delta, int resolution) {
    const double h = f.domain.length() / resolution;
    const int w = window_width(delta, h, resolution, f.periodic);
    const int cap = f.periodic ? resolution / 2 : resolution;
    const auto vals = grid_values(f, resolution, f.periodic);
    Sandwich s;
    s.lower = window_estimate(vals, w, f.periodic);
    const int wide = std::min(w + 1, cap);
    s.upper = (wide > w) ? window_estimate(vals, wide, f.periodic) : s.lower;
    return s;
}

} // namespace

ModulusEstimate modulus_of_continuity(const FunctionHandle& f, double delta,
                                      int resolution) {
    if (delta <= 0) throw Error("modulus_of_continuity: delta must be > 0");
    int res = std::max(resolution, 64);
    ModulusEstimate est;
    est.delta = delta;
    // Raw value differences stall on dyadic plateaus: the window width can
    // double exactly across several refinements while the estimate is still
    // far from its limit. The stopping rule therefore uses the two-sided
    // sandwich width; when it is below the tolerance the value has provably
    // stopped moving at that scale.
    while (true) {
        const Sandwich s = sandwich_at(f, delta, res);
        est.value = s.lower;
        est.resolution = res;
        if (s.upper - s.lower < kConvergenceTol) {
            est.converged = true;
            break;
        }
        if (res >= kMaxResolution) {
            est.converged = false;
            break;
        }
        res *= 2;
    }
    return est;
}

std::vector<ModulusEstimate> modulus_profile(const FunctionHandle& f,
                                             std::span<const double> deltas,
                                             int resolution) {
    if (deltas.empty()) throw Error("modulus_profile: empty delta list");
    std::vector<ModulusEstimate> out(deltas.size());
    for (std::size_t i = 0; i < deltas.size(); ++i) {
        out[i] = modulus_of_continuity(f, deltas[i], resolution);
    }
    return out;
}

double modulus_slack(const FunctionHandle& f, const ModulusEstimate& est) {
    double slope;
    if (f.lipschitz) {
        slope = *f.lipschitz;
    } else {
        const int probe = 4096;
        const auto vals = grid_values(f, probe, f.periodic);
        const double h = f.domain.length() / probe;
        slope = 0.0;
        for (std::size_t i = 0; i + 1 < vals.size(); ++i) {
            slope = std::max(slope, std::abs(vals[i + 1] - vals[i]) / h);
        }
    }
    return slope * 2.0 * f.domain.length() / static_cast<double>(est.resolution);
}

double modulus_at_resolution(const FunctionHandle& f, double delta, int resolution) {
    if (delta <= 0) throw Error("modulus_at_resolution: delta must be > 0");
    return estimate_at(f, delta, resolution);
}

double modulus_all_pairs(const FunctionHandle& f, double delta, int resolution) {
    const double h = f.domain.length() / resolution;
    const int w = window_width(delta, h, resolution, f.periodic);
    const auto vals = grid_values(f, resolution, f.periodic);
    const int n = static_cast<int>(vals.size());
    double best = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int d = 1; d <= w; ++d) {
            const int j = f.periodic ? (i + d) % n : i + d;
            if (!f.periodic && j >= n) break;
            best = std::max(best, std::abs(vals[i] - vals[j]));
        }
    }
    return best;
}

} // namespace korovkin
