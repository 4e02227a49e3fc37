#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

namespace qfc
{
// Evaluates fn(i) for i in [0, count) on up to `threads` workers and returns the
// results in index order, so the output does not depend on the schedule.  The
// first exception thrown by any worker is rethrown on the calling thread.
template <class Fn>
auto parallel_map(std::size_t count, unsigned threads, Fn fn) -> std::vector<decltype(fn(std::size_t{}))>
{
    using Result = decltype(fn(std::size_t{}));
    std::vector<std::optional<Result>> slots(count);

    const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
    if (workers == 1)
    {
        for (std::size_t i = 0; i < count; ++i)
            slots[i].emplace(fn(i));
    }
    else
    {
        std::atomic<std::size_t> next{0};
        std::exception_ptr error;
        std::mutex error_mutex;
        auto work = [&] {
            for (std::size_t i = next++; i < count; i = next++)
            {
                try
                {
                    slots[i].emplace(fn(i));
                }
                catch (...)
                {
                    std::lock_guard lock(error_mutex);
                    if (!error)
                        error = std::current_exception();
                    next = count;
                }
            }
        };
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back(work);
        pool.clear();
        if (error)
            std::rethrow_exception(error);
    }

    std::vector<Result> out;
    out.reserve(count);
    for (auto &slot : slots)
        out.push_back(std::move(*slot));
    return out;
}
} // namespace qfc
