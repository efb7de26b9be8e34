#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace pref {

/// Runs fn(i) for every i in [0, n) on at most `parallelism` threads, claiming
/// indices off a shared counter. Callers must make fn write only to its own
/// preallocated slot so results are position-stable regardless of scheduling.
/// If any invocations throw, the exception with the smallest index is
/// rethrown after all threads join, keeping failure reporting deterministic.
inline void parallel_for(std::size_t n, std::size_t parallelism,
                         const std::function<void(std::size_t)>& fn) {
    if (n == 0) return;
    if (parallelism == 0) parallelism = 1;

    if (parallelism == 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::size_t first_error_index = n;
    std::exception_ptr first_error;

    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (i < first_error_index) {
                    first_error_index = i;
                    first_error = std::current_exception();
                }
            }
        }
    };

    std::vector<std::thread> threads;
    const std::size_t n_threads = parallelism < n ? parallelism : n;
    threads.reserve(n_threads);
    for (std::size_t t = 0; t < n_threads; ++t) threads.emplace_back(worker);
    for (auto& t : threads) t.join();

    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace pref
