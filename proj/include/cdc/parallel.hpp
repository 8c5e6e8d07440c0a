#pragma once

// Tiny deterministic fork-join helper. Work items are indexed; every result
// slot is owned by exactly one index, so the outcome never depends on thread
// scheduling. CDC_THREADS caps the pool (1 disables threading).

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace cdc {

inline unsigned worker_thread_cap() {
    static const unsigned cap = [] {
        unsigned hw = std::thread::hardware_concurrency();
        if (hw == 0) hw = 1;
        unsigned cap = std::min(hw, 8u);
        if (const char* env = std::getenv("CDC_THREADS")) {
            long v = std::strtol(env, nullptr, 10);
            if (v >= 1) cap = static_cast<unsigned>(std::min<long>(v, 64));
        }
        return cap;
    }();
    return cap;
}

// Runs fn(i) for i in [0, count). fn must only write state owned by index i.
inline void parallel_for_index(std::size_t count, const std::function<void(std::size_t)>& fn) {
    unsigned threads = worker_thread_cap();
    if (threads <= 1 || count < 256) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            for (std::size_t i = t; i < count; i += threads) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace cdc
