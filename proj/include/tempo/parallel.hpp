#pragma once

#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace tempo {

// Runs fn(i) for i in [0, count) on up to `workers` threads with static
// chunking. Each index owns its output slot, so results do not depend on
// the worker count. workers <= 1 runs inline.
template <typename Fn>
void parallel_for(std::size_t count, int workers, Fn&& fn) {
    if (count == 0) return;
    std::size_t nthreads = workers <= 1 ? 1 : static_cast<std::size_t>(workers);
    if (nthreads > count) nthreads = count;
    if (nthreads == 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }

    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    std::exception_ptr error;
    std::mutex error_mutex;
    const std::size_t chunk = (count + nthreads - 1) / nthreads;
    for (std::size_t t = 0; t < nthreads; ++t) {
        const std::size_t begin = t * chunk;
        const std::size_t end = begin + chunk < count ? begin + chunk : count;
        if (begin >= end) break;
        pool.emplace_back([&, begin, end] {
            try {
                for (std::size_t i = begin; i < end; ++i) fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

} // namespace tempo
