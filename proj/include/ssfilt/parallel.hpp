#pragma once

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <vector>

namespace ssfilt {

/// Worker cap. SSFILT_THREADS env var limits the pool; 0 or unset means
/// hardware concurrency. Read once on first use.
inline int thread_count() {
    static const int n = [] {
        int hw = static_cast<int>(std::thread::hardware_concurrency());
        if (hw < 1) hw = 1;
        if (const char* env = std::getenv("SSFILT_THREADS")) {
            char* end = nullptr;
            long v = std::strtol(env, &end, 10);
            if (end != env && *end == '\0' && v > 0)
                return static_cast<int>(std::min<long>(v, 256));
        }
        return hw;
    }();
    return n;
}

/// Runs fn(lo, hi) over contiguous sub-ranges of [begin, end), one per worker.
/// Every index lands in exactly one range, so any per-index computation gives
/// the same result for any worker count. Callers must keep per-index work
/// independent (e.g. one row or one column per index).
template <typename Fn>
void parallel_ranges(int begin, int end, Fn&& fn) {
    const int n = end - begin;
    if (n <= 0) return;
    const int workers = std::min(thread_count(), n);
    if (workers <= 1) {
        fn(begin, end);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const int chunk = (n + workers - 1) / workers;
    for (int t = 0; t < workers; ++t) {
        const int lo = begin + t * chunk;
        const int hi = std::min(end, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &fn] { fn(lo, hi); });
    }
    for (auto& th : pool) th.join();
}

/// Per-index variant of parallel_ranges.
template <typename Fn>
void parallel_for(int begin, int end, Fn&& fn) {
    parallel_ranges(begin, end, [&fn](int lo, int hi) {
        for (int i = lo; i < hi; ++i) fn(i);
    });
}

}  // namespace ssfilt
