#pragma once

// Minimal fork-join helpers. Tasks are assigned statically so that results
// which depend on reduction order are reproducible for a fixed thread count.

#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace gcdim {

inline unsigned default_threads() {
    unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : n;
}

// Runs fn(worker, index) for index in [0, count), worker in [0, threads);
// worker w handles indices w, w+threads, w+2*threads, ...
inline void parallel_for_static(size_t count, unsigned threads,
                                const std::function<void(unsigned, size_t)>& fn) {
    if (threads <= 1 || count <= 1) {
        for (size_t i = 0; i < count; ++i) fn(0, i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w)
        pool.emplace_back([&, w]() {
            for (size_t i = w; i < count; i += threads) fn(w, i);
        });
    for (auto& t : pool) t.join();
}

}  // namespace gcdim
