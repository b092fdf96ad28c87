#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace vcell::detail {

// Runs fn(k) for k in [0, count) on up to `threads` workers (0 = hardware
// concurrency). Results must be written to per-k slots by the caller.
template <typename Fn>
void run_restarts(std::size_t count, std::size_t threads, Fn&& fn) {
    std::size_t workers =
        threads != 0 ? threads : std::max<std::size_t>(1, std::thread::hardware_concurrency());
    workers = std::min(workers, count);
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t k; (k = next.fetch_add(1)) < count;) fn(k);
    };
    if (workers <= 1) {
        work();
        return;
    }
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
}

}  // namespace vcell::detail
