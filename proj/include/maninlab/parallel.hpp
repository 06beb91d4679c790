#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace maninlab {

inline unsigned default_threads() {
    if (const char* env = std::getenv("MANINLAB_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return (unsigned)v;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? hc : 1;
}

// Splits [0,n) into fixed chunks, runs worker(chunk_index, begin, end) on a
// pool, and merges the partial results in chunk-index order. The merge
// order is independent of the thread count, so any associative merge gives
// thread-count-independent results (integer sums are exact regardless).
template <typename T>
T parallel_reduce(std::uint64_t n, unsigned threads, T init,
                  const std::function<T(std::uint64_t, std::uint64_t)>& worker,
                  const std::function<void(T&, const T&)>& merge) {
    if (threads == 0) threads = default_threads();
    // chunk boundaries are fixed (not thread-count dependent) and partials
    // merge in chunk order, so results are bit-identical for any pool size
    std::uint64_t nchunks = std::min<std::uint64_t>(n, 256);
    if (nchunks <= 1) {
        T r = init;
        if (n > 0) merge(r, worker(0, n));
        return r;
    }
    std::vector<T> partial(nchunks, init);
    std::vector<std::thread> pool;
    std::vector<std::uint64_t> next_chunk{0};
    std::mutex mtx;
    auto run = [&]() {
        while (true) {
            std::uint64_t c;
            {
                std::lock_guard<std::mutex> lk(mtx);
                if (next_chunk[0] >= nchunks) return;
                c = next_chunk[0]++;
            }
            std::uint64_t b = n * c / nchunks;
            std::uint64_t e = n * (c + 1) / nchunks;
            partial[c] = worker(b, e);
        }
    };
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(run);
    for (auto& th : pool) th.join();
    T result = init;
    for (std::uint64_t c = 0; c < nchunks; ++c) merge(result, partial[c]);
    return result;
}

}  // namespace maninlab
