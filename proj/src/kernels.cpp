#include "korovkin/kernels.hpp"

#include <cmath>
#include <deque>
#include <limits>

#include "korovkin/common.hpp"

namespace korovkin::kernels {

namespace {

/// max over windows v[s .. min(s+w, n-1)] for s in [first, last) of
/// (window max - window min), via monotonic deques. O(last - first + w).
double window_range_block(std::span<const double> v, int w, std::size_t first, std::size_t last) {
    const std::size_t n = v.size();
    std::deque<std::size_t> maxq, minq;
    std::size_t next = first;
    double best = 0.0;
    for (std::size_t s = first; s < last; ++s) {
        const std::size_t end = std::min(s + static_cast<std::size_t>(w), n - 1);
        while (next <= end) {
            while (!maxq.empty() && v[maxq.back()] <= v[next]) maxq.pop_back();
            maxq.push_back(next);
            while (!minq.empty() && v[minq.back()] >= v[next]) minq.pop_back();
            minq.push_back(next);
            ++next;
        }
        while (maxq.front() < s) maxq.pop_front();
        while (minq.front() < s) minq.pop_front();
        best = std::max(best, v[maxq.front()] - v[minq.front()]);
    }
    return best;
}

} // namespace

double window_range_max_serial(std::span<const double> v, int w) {
    if (v.empty()) throw Error("window_range_max: empty input");
    if (w <= 0) return 0.0;
    return window_range_block(v, w, 0, v.size());
}

double window_range_max_parallel(std::span<const double> v, int w) {
    if (v.empty()) throw Error("window_range_max: empty input");
    if (w <= 0) return 0.0;
#ifdef _OPENMP
    const std::size_t n = v.size();
    const int nthreads = omp_get_max_threads();
    const std::size_t chunk = (n + nthreads - 1) / nthreads;
    double best = 0.0;
#pragma omp parallel reduction(max : best)
    {
        const int t = omp_get_thread_num();
        const std::size_t first = std::min(n, static_cast<std::size_t>(t) * chunk);
        const std::size_t last = std::min(n, first + chunk);
        if (first < last) best = window_range_block(v, w, first, last);
    }
    return best;
#else
    return window_range_max_serial(v, w);
#endif
}

double window_range_max(std::span<const double> v, int w) {
    if (v.size() < 8192) return window_range_max_serial(v, w);
    return window_range_max_parallel(v, w);
}

namespace {

std::vector<double> map_grid_impl(const std::function<double(double)>& fn,
                                  std::span<const double> xs, bool parallel) {
    std::vector<double> out(xs.size());
    bool bad = false;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel)
#endif
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(xs.size()); ++i) {
        const double v = fn(xs[i]);
        out[i] = v;
        if (!std::isfinite(v)) {
#ifdef _OPENMP
#pragma omp atomic write
#endif
            bad = true;
        }
    }
    if (bad) throw NonFiniteEvaluation("map_grid: non-finite evaluation on grid");
    return out;
}

} // namespace

std::vector<double> map_grid_serial(const std::function<double(double)>& fn,
                                    std::span<const double> xs) {
    return map_grid_impl(fn, xs, false);
}

std::vector<double> map_grid_parallel(const std::function<double(double)>& fn,
                                      std::span<const double> xs) {
    return map_grid_impl(fn, xs, true);
}

std::vector<double> map_grid(const std::function<double(double)>& fn,
                             std::span<const double> xs) {
    return map_grid_impl(fn, xs, xs.size() >= 512);
}

} // namespace korovkin::kernels
