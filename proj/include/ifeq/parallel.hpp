#pragma once

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace ifeq {

// Runs fn(i) for every i in [0, n). Work is handed out in fixed-size blocks
// through an atomic cursor; fn must write its result by index only. Output is
// then independent of the worker count and of scheduling order.
template <class Fn>
void parallel_for(std::size_t n, unsigned workers, Fn&& fn) {
    if (n == 0) return;
    if (workers <= 1 || n == 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    constexpr std::size_t block = 16;
    std::atomic<std::size_t> cursor{0};
    auto run = [&] {
        for (;;) {
            std::size_t begin = cursor.fetch_add(block);
            if (begin >= n) return;
            std::size_t end = begin + block < n ? begin + block : n;
            for (std::size_t i = begin; i < end; ++i) fn(i);
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(run);
    run();
    for (auto& t : pool) t.join();
}

// Streaming mean/variance accumulator (Welford), mergeable so per-block
// moments can be folded in a fixed order regardless of which thread
// produced them.
struct RunningMoments {
    std::size_t n = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x) {
        ++n;
        double d = x - mean;
        mean += d / static_cast<double>(n);
        m2 += d * (x - mean);
    }

    void merge(const RunningMoments& o) {
        if (o.n == 0) return;
        if (n == 0) { *this = o; return; }
        double total = static_cast<double>(n + o.n);
        double d = o.mean - mean;
        mean += d * (static_cast<double>(o.n) / total);
        m2 += o.m2 + d * d * (static_cast<double>(n) * static_cast<double>(o.n) / total);
        n += o.n;
    }

    double variance() const { return n > 1 ? m2 / static_cast<double>(n - 1) : 0.0; }
};

} // namespace ifeq
