/*
 * parallel.hpp — deterministic task parallelism over an index range.
 *
 * Work items are pure functions of their index; results must be written to
 * per-index slots so the outcome is identical for any worker count. BLAS is
 * pinned to a single thread (see spectra.hpp), so nesting is safe.
 */

#pragma once

#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace wigner {

template <class Fn>
void parallel_for(int begin, int end, int threads, Fn&& body) {
    const int count = end - begin;
    if (count <= 0) return;
    threads = std::max(1, std::min(threads, count));
    if (threads == 1) {
        for (int i = begin; i < end; ++i) body(i);
        return;
    }
    std::atomic<int> next(begin);
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&]() {
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= end) return;
            try {
                body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

} // namespace wigner
