#include "sfa/parallel.hpp"

#include <atomic>

namespace sfa {
namespace {

std::atomic<unsigned> g_thread_count{1};

}  // namespace

void set_thread_count(unsigned n) {
    g_thread_count.store(n, std::memory_order_relaxed);
}

unsigned thread_count() {
    return g_thread_count.load(std::memory_order_relaxed);
}

}  // namespace sfa
