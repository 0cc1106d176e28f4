#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace sfa {

// Process-wide worker count. 0 selects the hardware concurrency at call time.
// Results must not depend on this setting: every parallel region writes to
// disjoint locations and all reductions run serially in a fixed order.
void set_thread_count(unsigned n);
unsigned thread_count();

// Runs body(i) for i in [0, count), split into contiguous chunks across
// worker threads. Runs inline when one thread suffices. body must only write
// state owned by index i. Exceptions from body propagate (first thread wins).
template <typename Body>
void parallel_for(std::size_t count, const Body& body) {
    unsigned workers = thread_count();
    if (workers == 0) {
        workers = std::thread::hardware_concurrency();
        if (workers == 0) {
            workers = 1;
        }
    }
    if (workers > count) {
        workers = static_cast<unsigned>(count);
    }
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) {
            body(i);
        }
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::exception_ptr err;
    std::mutex err_mu;
    const std::size_t chunk = (count + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        const std::size_t lo = static_cast<std::size_t>(w) * chunk;
        const std::size_t hi = std::min(count, lo + chunk);
        if (lo >= hi) {
            break;
        }
        pool.emplace_back([&, lo, hi] {
            try {
                for (std::size_t i = lo; i < hi; ++i) {
                    body(i);
                }
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mu);
                if (!err) {
                    err = std::current_exception();
                }
            }
        });
    }
    for (auto& th : pool) {
        th.join();
    }
    if (err) {
        std::rethrow_exception(err);
    }
}

}  // namespace sfa
