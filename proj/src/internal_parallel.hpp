#pragma once

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace conelab::detail {

inline long worker_count() {
    if (const char* env = std::getenv("CONELAB_THREADS")) {
        const long n = std::atol(env);
        if (n >= 1) return std::min(n, 64L);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return std::min<long>(hw == 0 ? 1 : hw, 8);
}

// Static chunking over [0, n). Work items must be independent; callers keyed
// by counter-based RNG streams get scheduling-independent results for free.
template <typename Fn>
void parallel_for(long n, Fn&& fn) {
    if (n <= 0) return;
    const long workers = worker_count();
    if (n < 256 || workers <= 1) {
        for (long i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::exception_ptr first_error;
    std::mutex err_mu;
    const long chunk = (n + workers - 1) / workers;
    for (long w = 0; w < workers; ++w) {
        const long lo = w * chunk;
        const long hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&, lo, hi]() {
            try {
                for (long i = lo; i < hi; ++i) fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> g(err_mu);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

} // namespace conelab::detail
