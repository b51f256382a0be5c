// Copyright Contributors to the hsplat project
// SPDX-License-Identifier: Apache-2.0

#include "hsplat/thread_pool.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace hsplat {

int default_thread_count() {
    if (const char* env = std::getenv("HSPL_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

void parallel_for_chunks(std::int64_t count, int threads, std::int64_t grain,
                         const std::function<void(std::int64_t, std::int64_t)>& fn) {
    if (threads <= 0) threads = default_thread_count();
    if (grain < 1) grain = 1;
    if (count <= 0) return;
    if (threads == 1 || count <= grain) {
        fn(0, count);
        return;
    }
    std::atomic<std::int64_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto worker = [&] {
        try {
            for (;;) {
                const std::int64_t begin = next.fetch_add(grain);
                if (begin >= count) return;
                fn(begin, std::min(begin + grain, count));
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!first_error) first_error = std::current_exception();
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads) - 1);
    for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

void parallel_for(std::int64_t count, int threads, const std::function<void(std::int64_t)>& fn) {
    const std::int64_t grain = std::max<std::int64_t>(1, count / (8 * std::max(threads, 1) + 1));
    parallel_for_chunks(count, threads, grain, [&](std::int64_t b, std::int64_t e) {
        for (std::int64_t i = b; i < e; ++i) fn(i);
    });
}

} // namespace hsplat
