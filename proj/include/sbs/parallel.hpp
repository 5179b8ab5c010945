#pragma once

#include <atomic>
#include <condition_variable>
#include <cstddef>
#include <exception>
#include <map>
#include <mutex>
#include <thread>
#include <vector>

namespace sbs {

/// 0 or 1 -> serial; otherwise the requested worker count.
[[nodiscard]] inline unsigned resolve_threads(unsigned requested) {
    return requested == 0 ? 1 : requested;
}

/// Run fn(i) for i in [0, n). Each index writes only its own outputs, so the
/// result is independent of scheduling.
template <typename Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
    threads = resolve_threads(threads);
    if (threads <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
            if (i >= n) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                next.store(n, std::memory_order_relaxed);
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

/// Map blocks [0, block_count) to partial results on worker threads, then
/// reduce them on the calling thread in strictly increasing block order.
///
/// The reduction order is fixed by block index, not by completion order, so
/// floating-point accumulation gives bit-identical results for any thread
/// count. In-flight partials are bounded, keeping memory proportional to the
/// worker count rather than the block count.
template <typename Partial, typename MapFn, typename ReduceFn>
void ordered_block_reduce(std::size_t block_count, unsigned threads, MapFn&& map, ReduceFn&& reduce) {
    threads = resolve_threads(threads);
    if (threads <= 1 || block_count <= 1) {
        for (std::size_t b = 0; b < block_count; ++b) reduce(b, map(b));
        return;
    }

    std::mutex mutex;
    std::condition_variable produced;
    std::condition_variable drained;
    std::map<std::size_t, Partial> ready;
    std::size_t next_to_merge = 0;
    std::atomic<std::size_t> next_block{0};
    std::exception_ptr error;
    const std::size_t max_in_flight = 2 * static_cast<std::size_t>(threads) + 2;

    auto worker = [&] {
        for (;;) {
            const std::size_t b = next_block.fetch_add(1, std::memory_order_relaxed);
            if (b >= block_count) return;
            try {
                Partial partial = map(b);
                std::unique_lock lock(mutex);
                drained.wait(lock, [&] {
                    return error || ready.size() < max_in_flight || b == next_to_merge;
                });
                if (error) return;
                ready.emplace(b, std::move(partial));
                produced.notify_all();
            } catch (...) {
                std::lock_guard lock(mutex);
                if (!error) error = std::current_exception();
                next_block.store(block_count, std::memory_order_relaxed);
                produced.notify_all();
                drained.notify_all();
                return;
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);

    {
        std::unique_lock lock(mutex);
        while (next_to_merge < block_count) {
            produced.wait(lock, [&] { return error || ready.count(next_to_merge) > 0; });
            if (error) break;
            const std::size_t merging = next_to_merge;
            auto node = ready.extract(merging);
            ++next_to_merge;  // mutated under the mutex only; workers read it in wait predicates
            drained.notify_all();
            lock.unlock();
            reduce(merging, std::move(node.mapped()));
            lock.lock();
        }
    }

    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace sbs
