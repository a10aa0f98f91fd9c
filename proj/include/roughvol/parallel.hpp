#pragma once

#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace rvol {

/// Runs body(i) for i in [0, n) across hardware threads. Each index writes
/// only its own preallocated slot, so the result is independent of the
/// worker count.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
    unsigned workers = std::thread::hardware_concurrency();
    if (workers == 0) workers = 1;
    if (n < 2 || workers == 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w]() {
            for (std::size_t i = w; i < n; i += workers) body(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace rvol
