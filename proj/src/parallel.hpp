#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace selgrade::detail {

/// Runs work(begin, end, slot) over contiguous chunks of [0, count) on up to
/// hardware_concurrency threads. Each slot owns its output; callers merge slots in order,
/// so results do not depend on scheduling.
template <typename Work>
std::size_t parallel_chunks(std::size_t count, Work&& work) {
    const std::size_t threads =
        std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, std::max<std::size_t>(1, count / 256));
    if (threads <= 1) {
        work(std::size_t{0}, count, std::size_t{0});
        return 1;
    }
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
        std::vector<std::jthread> pool;
        const std::size_t chunk = (count + threads - 1) / threads;
        for (std::size_t t = 0; t < threads; ++t) {
            const std::size_t begin = t * chunk;
            const std::size_t end = std::min(count, begin + chunk);
            pool.emplace_back([&, begin, end, t] {
                try {
                    work(begin, end, t);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) {
                        failure = std::current_exception();
                    }
                }
            });
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    return threads;
}

inline std::size_t worker_slots(std::size_t count) {
    return std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, std::max<std::size_t>(1, count / 256));
}

}  // namespace selgrade::detail
