// Timing comparison of the serial reference kernels against the OpenMP
// variants, plus one end-to-end norm evaluation. Not part of ctest.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <vector>

#include "korovkin/kernels.hpp"
#include "korovkin/modulus.hpp"
#include "korovkin/spaces.hpp"

using namespace korovkin;

namespace {

double now_seconds() {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

template <class Fn>
double time_best_of(int reps, Fn&& fn) {
    double best = 1e300;
    for (int i = 0; i < reps; ++i) {
        const double t0 = now_seconds();
        fn();
        best = std::min(best, now_seconds() - t0);
    }
    return best;
}

volatile double sink = 0.0;

} // namespace

int main() {
    std::mt19937 rng(1234);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);

    std::printf("%-34s %12s %12s %8s\n", "kernel", "serial [s]", "parallel [s]", "speedup");

    {
        const int n = 1 << 21;
        const int w = 4096;
        std::vector<double> v(n);
        for (double& x : v) x = dist(rng);
        const double ts = time_best_of(3, [&] { sink = kernels::window_range_max_serial(v, w); });
        const double tp = time_best_of(3, [&] { sink = kernels::window_range_max_parallel(v, w); });
        std::printf("%-34s %12.4f %12.4f %8.2f\n", "window_range_max (2^21, w=4096)", ts, tp,
                    ts / tp);
    }

    {
        const int n = 4096;
        std::vector<double> prefix(n + 1, 0.0);
        for (int i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + std::abs(dist(rng));
        auto obj = [&](int i, int j) {
            return (prefix[j] - prefix[i]) * std::pow((j - i) / double(n), -0.4);
        };
        const double ts = time_best_of(3, [&] { sink = kernels::pair_scan_max_serial(n, obj).value; });
        const double tp = time_best_of(3, [&] { sink = kernels::pair_scan_max_parallel(n, obj).value; });
        std::printf("%-34s %12.4f %12.4f %8.2f\n", "pair_scan_max (4096 boundaries)", ts, tp,
                    ts / tp);
    }

    {
        std::vector<double> xs(1 << 19);
        for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = i / double(xs.size());
        auto fn = [](double x) { return std::sin(40.0 * x) * std::exp(-x); };
        const double ts = time_best_of(3, [&] { sink = kernels::map_grid_serial(fn, xs)[0]; });
        const double tp = time_best_of(3, [&] { sink = kernels::map_grid_parallel(fn, xs)[0]; });
        std::printf("%-34s %12.4f %12.4f %8.2f\n", "map_grid (2^19 points)", ts, tp, ts / tp);
    }

    {
        // End to end: a Morrey norm is dominated by cell integrals plus the
        // interval pair scan, both of which parallelize.
        auto space = SpaceSpec::morrey(2, 3);
        space.resolution = 2048;
        const auto f = make_steep_step();
        const double t = time_best_of(2, [&] { sink = norm(space, f).value; });
        std::printf("%-34s %25s %8.4f s\n", "morrey norm end-to-end (N=2048)", "", t);
    }

    {
        const auto f = make_sqrt();
        const double t = time_best_of(2, [&] { sink = modulus_of_continuity(f, 0.1).value; });
        std::printf("%-34s %25s %8.4f s\n", "modulus refinement ladder", "", t);
    }

    return 0;
}
