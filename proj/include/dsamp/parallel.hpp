#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace dsamp {

// Runs fn(i) for every i in [0, count) on up to `threads` workers
// (0 = hardware concurrency). Callers keep determinism by writing result i
// to slot i; the schedule never influences the values computed.
template <typename Fn>
void parallel_for(std::uint64_t count, unsigned threads, Fn&& fn) {
    if (count == 0) return;
    unsigned workers = threads == 0 ? std::thread::hardware_concurrency() : threads;
    if (workers == 0) workers = 1;
    workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, count));

    if (workers == 1) {
        for (std::uint64_t i = 0; i < count; ++i) fn(i);
        return;
    }

    std::atomic<std::uint64_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_lock;

    auto body = [&] {
        for (;;) {
            const std::uint64_t i = next.fetch_add(1, std::memory_order_relaxed);
            if (i >= count || failed.load(std::memory_order_relaxed)) return;
            try {
                fn(i);
            } catch (...) {
                failed.store(true, std::memory_order_relaxed);
                std::scoped_lock hold(error_lock);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };

    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(body);
    pool.clear();  // join

    if (error) std::rethrow_exception(error);
}

}  // namespace dsamp
