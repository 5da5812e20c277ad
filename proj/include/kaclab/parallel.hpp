#pragma once

#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace kaclab {

/// Worker count: KACLAB_THREADS env var if set, else hardware concurrency.
inline unsigned default_workers() {
    if (const char* env = std::getenv("KACLAB_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? hc : 1;
}

/// Runs body(i, worker_id) for i in [0, count).  Work items are handed out in
/// contiguous blocks from a shared cursor; every item's result must depend
/// only on i so that the outcome is identical for any worker count.
inline void parallel_for(std::size_t count, unsigned workers,
                         const std::function<void(std::size_t, unsigned)>& body,
                         std::size_t block = 64) {
    if (count == 0) return;
    if (workers <= 1 || count <= block) {
        for (std::size_t i = 0; i < count; ++i) body(i, 0);
        return;
    }
    std::atomic<std::size_t> cursor{0};
    std::vector<std::thread> pool;
    std::exception_ptr first_error;
    std::mutex error_mu;
    auto run = [&](unsigned worker) {
        try {
            for (;;) {
                std::size_t begin = cursor.fetch_add(block);
                if (begin >= count) return;
                std::size_t end = std::min(begin + block, count);
                for (std::size_t i = begin; i < end; ++i) body(i, worker);
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(error_mu);
            if (!first_error) first_error = std::current_exception();
        }
    };
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace kaclab
