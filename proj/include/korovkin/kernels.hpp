#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "korovkin/common.hpp"

namespace korovkin::kernels {

// Serial reference implementations are kept alongside the OpenMP variants:
// tests assert they agree, the benchmark compares them, and the public
// entry points dispatch on problem size.

/// max over all windows of w+1 consecutive entries of (max - min).
/// Equals max |v[i] - v[j]| over |i - j| <= w. Requires 0 <= w < v.size().
double window_range_max_serial(std::span<const double> v, int w);
double window_range_max_parallel(std::span<const double> v, int w);
double window_range_max(std::span<const double> v, int w);

struct PairScanResult {
    double value = -1.0;
    int i = 0;
    int j = 1;
};

/// Maximizes obj(i, j) over grid boundary pairs 0 <= i < j <= n. obj must be
/// re-entrant. Returns value and the attaining pair.
template <class Obj>
PairScanResult pair_scan_max_serial(int n, Obj&& obj) {
    PairScanResult best;
    best.value = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j <= n; ++j) {
            const double v = obj(i, j);
            if (v > best.value) best = {v, i, j};
        }
    }
    return best;
}

template <class Obj>
PairScanResult pair_scan_max_parallel(int n, Obj&& obj) {
    PairScanResult best;
    best.value = -std::numeric_limits<double>::infinity();
#ifdef _OPENMP
#pragma omp parallel
    {
        PairScanResult local = best;
#pragma omp for schedule(static, 8) nowait
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j <= n; ++j) {
                const double v = obj(i, j);
                if (v > local.value) local = {v, i, j};
            }
        }
#pragma omp critical(korovkin_pair_scan)
        {
            if (local.value > best.value ||
                (local.value == best.value && (local.i < best.i || (local.i == best.i && local.j < best.j)))) {
                best = local;
            }
        }
    }
    return best;
#else
    return pair_scan_max_serial(n, obj);
#endif
}

template <class Obj>
PairScanResult pair_scan_max(int n, Obj&& obj) {
    if (n < 256) return pair_scan_max_serial(n, obj);
    return pair_scan_max_parallel(n, obj);
}

/// Evaluates fn at each point of xs. The parallel variant requires fn to be
/// re-entrant; both throw if any evaluation is non-finite.
std::vector<double> map_grid_serial(const std::function<double(double)>& fn,
                                    std::span<const double> xs);
std::vector<double> map_grid_parallel(const std::function<double(double)>& fn,
                                      std::span<const double> xs);
std::vector<double> map_grid(const std::function<double(double)>& fn,
                             std::span<const double> xs);

} // namespace korovkin::kernels
