#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <utility>
#include <vector>

namespace apfrac {

/// Run `work(chunk_index)` for chunk_index in [0, chunks) on up to `threads`
/// workers and return results in chunk order. Results are merged by index, so
/// the output is identical for every thread count.
template <typename F>
auto parallel_chunks(std::size_t chunks, unsigned threads, F&& work)
    -> std::vector<decltype(work(std::size_t{0}))> {
    using R = decltype(work(std::size_t{0}));
    std::vector<R> results(chunks);
    if (chunks == 0) return results;
    if (threads <= 1 || chunks == 1) {
        for (std::size_t i = 0; i < chunks; ++i) results[i] = work(i);
        return results;
    }
    std::atomic<std::size_t> next{0};
    auto runner = [&]() {
        while (true) {
            std::size_t i = next.fetch_add(1);
            if (i >= chunks) break;
            results[i] = work(i);
        }
    };
    std::vector<std::thread> pool;
    unsigned n = threads < chunks ? threads : static_cast<unsigned>(chunks);
    pool.reserve(n);
    std::exception_ptr first_error;
    std::mutex error_mx;
    for (unsigned t = 0; t < n; ++t) {
        pool.emplace_back([&]() {
            try {
                runner();
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mx);
                if (!first_error) first_error = std::current_exception();
                next.store(chunks);  // drain remaining work
            }
        });
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
    return results;
}

/// Split [lo, hi] into near-equal inclusive subranges, at most `max_chunks`.
inline std::vector<std::pair<long long, long long>> split_range(long long lo, long long hi,
                                                                std::size_t max_chunks) {
    std::vector<std::pair<long long, long long>> out;
    if (hi < lo || max_chunks == 0) return out;
    unsigned long long total = static_cast<unsigned long long>(hi - lo) + 1;
    std::size_t chunks = max_chunks;
    if (total < chunks) chunks = static_cast<std::size_t>(total);
    unsigned long long base = total / chunks, extra = total % chunks;
    long long cur = lo;
    for (std::size_t i = 0; i < chunks; ++i) {
        unsigned long long len = base + (i < extra ? 1 : 0);
        out.emplace_back(cur, cur + static_cast<long long>(len) - 1);
        cur += static_cast<long long>(len);
    }
    return out;
}

} // namespace apfrac
