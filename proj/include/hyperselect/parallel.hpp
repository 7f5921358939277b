#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace hyperselect {

/// Runs body(i) for i in [0, n) on up to `jobs` threads. Work items are claimed
/// dynamically; callers must write results into per-index slots. The first
/// exception thrown by any item is rethrown on the calling thread.
template <class Body>
void parallel_for(std::size_t n, std::size_t jobs, Body&& body) {
    jobs = std::max<std::size_t>(1, std::min(jobs, n));
    if (jobs == 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                body(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                next.store(n);
            }
        }
    };
    {
        std::vector<std::jthread> threads;
        threads.reserve(jobs - 1);
        for (std::size_t t = 1; t < jobs; ++t) threads.emplace_back(worker);
        worker();
    }
    if (error) std::rethrow_exception(error);
}

}  // namespace hyperselect
