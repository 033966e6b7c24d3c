#pragma once

#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace weightlab {

/// Thread count resolution: WEIGHTLAB_THREADS overrides the requested value;
/// 0 means hardware concurrency.
inline unsigned resolve_threads(unsigned requested) {
    if (const char* env = std::getenv("WEIGHTLAB_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) return static_cast<unsigned>(v);
    }
    if (requested > 0) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

/// Index-parallel map; results land by index so the output is independent of
/// the schedule and the thread count.
template <class Fn>
inline void parallel_for(size_t count, unsigned threads, Fn&& fn) {
    threads = std::max(1u, std::min<unsigned>(threads, count == 0 ? 1 : count));
    if (threads <= 1 || count <= 1) {
        for (size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            for (size_t i = t; i < count; i += threads) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

} // namespace weightlab
