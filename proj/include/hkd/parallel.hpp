#pragma once

#include <atomic>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace hkd {

// Process-wide worker count; the CLI sets this from --threads. Zero means
// "use hardware concurrency".
inline std::atomic<unsigned>& thread_count_setting() {
    static std::atomic<unsigned> v{0};
    return v;
}

inline void set_thread_count(unsigned n) { thread_count_setting().store(n); }

inline unsigned effective_thread_count() {
    unsigned n = thread_count_setting().load();
    if (n == 0) {
        n = std::thread::hardware_concurrency();
        if (n == 0)
            n = 1;
    }
    return n;
}

// Runs fn(i) for i in [begin, end) on a small pool. Work items must be
// independent; results are merged by the caller keyed on the index, so the
// outcome does not depend on the schedule. If several items throw, the one
// with the smallest index wins, again for reproducibility.
inline void parallel_for_index(std::uint64_t begin, std::uint64_t end,
                               const std::function<void(std::uint64_t)>& fn) {
    const std::uint64_t count = end > begin ? end - begin : 0;
    if (count == 0)
        return;
    unsigned workers = effective_thread_count();
    if (workers > count)
        workers = static_cast<unsigned>(count);
    if (workers <= 1) {
        for (std::uint64_t i = begin; i < end; ++i)
            fn(i);
        return;
    }

    std::atomic<std::uint64_t> next{begin};
    std::mutex err_mtx;
    std::exception_ptr first_error;
    std::uint64_t first_error_index = 0;

    auto body = [&] {
        for (;;) {
            const std::uint64_t i = next.fetch_add(1);
            if (i >= end)
                return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mtx);
                if (!first_error || i < first_error_index) {
                    first_error = std::current_exception();
                    first_error_index = i;
                }
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned t = 0; t < workers; ++t)
        pool.emplace_back(body);
    for (auto& th : pool)
        th.join();
    if (first_error)
        std::rethrow_exception(first_error);
}

} // namespace hkd
