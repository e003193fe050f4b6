#pragma once

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace cuspidal {

// Worker count: CUSPIDAL_ATLAS_THREADS caps it, hardware concurrency otherwise.
inline int thread_cap() {
    static const int cap = [] {
        int n = static_cast<int>(std::thread::hardware_concurrency());
        if (n <= 0) n = 1;
        if (const char* env = std::getenv("CUSPIDAL_ATLAS_THREADS")) {
            int m = std::atoi(env);
            if (m > 0) n = std::min(n, m);
        }
        return std::clamp(n, 1, 64);
    }();
    return cap;
}

// fn(i) for i in [0, n); results must be written to disjoint slots so the
// outcome does not depend on scheduling.
template <class F>
void parallel_for(int n, F&& fn) {
    const int workers = std::min(thread_cap(), n);
    if (workers <= 1 || n < 4) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (int i = w; i < n; i += workers) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace cuspidal
