#pragma once

#include <cstdint>
#include <thread>
#include <vector>

namespace lucky {

// Splits [lo, hi] into contiguous chunks and runs fn(chunk_index, chunk_lo,
// chunk_hi) on worker threads. Chunking depends only on (lo, hi, threads), so
// per-chunk results merged in index order are deterministic.
template <typename Fn>
void parallel_chunks(std::uint64_t lo, std::uint64_t hi, unsigned threads, Fn&& fn) {
    if (hi < lo) return;
    std::uint64_t span = hi - lo + 1;
    unsigned workers = threads == 0 ? 1 : threads;
    if (workers > span) workers = static_cast<unsigned>(span);
    if (workers <= 1) {
        fn(0u, lo, hi);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::uint64_t chunk = span / workers;
    std::uint64_t extra = span % workers;
    std::uint64_t begin = lo;
    for (unsigned w = 0; w < workers; ++w) {
        std::uint64_t len = chunk + (w < extra ? 1 : 0);
        std::uint64_t end = begin + len - 1;
        pool.emplace_back([&fn, w, begin, end] { fn(w, begin, end); });
        begin = end + 1;
    }
    for (auto& t : pool) t.join();
}

inline unsigned chunk_count(std::uint64_t lo, std::uint64_t hi, unsigned threads) {
    if (hi < lo) return 0;
    std::uint64_t span = hi - lo + 1;
    unsigned workers = threads == 0 ? 1 : threads;
    if (workers > span) workers = static_cast<unsigned>(span);
    return workers < 1 ? 1 : workers;
}

} // namespace lucky
