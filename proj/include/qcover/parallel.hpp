#pragma once

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace qcover {

// Run fn(i) for every i in [0, count) using the given number of worker
// threads. Work is handed out in chunks through an atomic cursor, so the
// assignment of items to threads is nondeterministic -- callers must write
// results into per-index slots to stay worker-count independent.
template <typename Fn>
void parallel_for(std::size_t count, unsigned workers, Fn&& fn) {
    if (count == 0) return;
    if (workers <= 1 || count == 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    const std::size_t chunk = 16;
    std::atomic<std::size_t> cursor{0};
    auto body = [&] {
        for (;;) {
            std::size_t begin = cursor.fetch_add(chunk);
            if (begin >= count) return;
            std::size_t end = begin + chunk < count ? begin + chunk : count;
            for (std::size_t i = begin; i < end; ++i) fn(i);
        }
    };
    std::vector<std::thread> pool;
    unsigned n = workers < count ? workers : static_cast<unsigned>(count);
    pool.reserve(n);
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(body);
    for (auto& th : pool) th.join();
}

}  // namespace qcover
