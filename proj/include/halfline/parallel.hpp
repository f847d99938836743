#pragma once

#include <algorithm>
#include <atomic>
#include <thread>
#include <vector>

namespace halfline {

// Runs fn(i) for i in [0, count) on the available hardware threads.
template <class Fn>
void parallel_for(int count, Fn fn) {
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const int workers = static_cast<int>(std::min<unsigned>(hw, static_cast<unsigned>(std::max(count, 1))));
    if (workers <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (int i = next++; i < count; i = next++) fn(i);
        });
    for (auto& t : pool) t.join();
}

}  // namespace halfline
