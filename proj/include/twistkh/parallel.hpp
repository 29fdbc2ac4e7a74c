// parallel.hpp -- minimal deterministic work splitter.

#pragma once

#include <functional>
#include <thread>
#include <vector>

namespace twistkh {

// Runs fn(0..n-1); tasks must write only to their own output slots, so the
// result is schedule-independent.
inline void parallel_for(int n, int threads, const std::function<void(int)>& fn) {
    if (threads <= 1 || n <= 1) {
        for (int i = 0; i < n; ++i)
            fn(i);
        return;
    }
    int nt = std::min(threads, n);
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errs(nt);
    pool.reserve(nt);
    for (int t = 0; t < nt; ++t) {
        pool.emplace_back([&, t]() {
            try {
                for (int i = t; i < n; i += nt)
                    fn(i);
            } catch (...) {
                errs[t] = std::current_exception();
            }
        });
    }
    for (auto& th : pool)
        th.join();
    for (auto& e : errs)
        if (e)
            std::rethrow_exception(e);
}

} // namespace twistkh
