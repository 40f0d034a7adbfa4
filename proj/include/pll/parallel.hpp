#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace pll {

/// Worker count: `requested` if non-zero, else PLL_THREADS if set and
/// non-zero, else the hardware concurrency. Never returns 0.
[[nodiscard]] inline std::size_t resolve_threads(std::size_t requested = 0) {
    std::size_t n = requested;
    if (n == 0) {
        if (const char* env = std::getenv("PLL_THREADS")) {
            try {
                n = static_cast<std::size_t>(std::stoul(env));
            } catch (const std::exception&) {
                n = 0;
            }
        }
    }
    if (n == 0) n = std::thread::hardware_concurrency();
    return std::max<std::size_t>(1, n);
}

/// Calls fn(i) for i in [0, count) on up to `threads` workers. Each index
/// runs exactly once; fn must confine its writes to slot i of its output.
template <typename Fn>
void parallel_for(std::size_t count, std::size_t threads, Fn&& fn) {
    threads = std::min(threads, count);
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (std::size_t w = 0; w < threads; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = next++; i < count; i = next++) fn(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

}  // namespace pll
