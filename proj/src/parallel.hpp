#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace stratdisc::detail
{
inline unsigned resolve_workers(unsigned requested)
{
    if (requested > 0)
        return requested;
    return std::max(1u, std::thread::hardware_concurrency());
}

/*!
 * Run task(i) for i in [0, count) on up to `workers` threads.
 *
 * Tasks are claimed dynamically, so callers must write results to
 * index-addressed slots and reduce them in index order afterwards.
 */
template<class F>
void parallel_for(std::size_t count, unsigned workers, F&& task)
{
    workers = static_cast<unsigned>(
        std::min<std::size_t>(resolve_workers(workers), std::max<std::size_t>(count, 1)));
    if (workers <= 1)
    {
        for (std::size_t i = 0; i < count; ++i)
            task(i);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto body = [&] {
        for (;;)
        {
            std::size_t i = next.fetch_add(1);
            if (i >= count)
                return;
            try
            {
                task(i);
            }
            catch (...)
            {
                std::lock_guard lock(error_mutex);
                if (!error)
                    error = std::current_exception();
                next.store(count);
                return;
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back(body);
    for (auto& t : pool)
        t.join();
    if (error)
        std::rethrow_exception(error);
}
}  // namespace stratdisc::detail
