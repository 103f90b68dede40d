#include "fracfem/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <vector>

namespace fracfem {

int resolve_thread_count(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("FRACFEM_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? static_cast<int>(hc) : 1;
}

void parallel_blocks(int n, int threads, const std::function<void(int, int, int)>& block) {
    threads = std::max(1, std::min(threads, n));
    if (threads == 1) {
        block(0, 0, n);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) {
        int begin = static_cast<int>(static_cast<long long>(n) * t / threads);
        int end = static_cast<int>(static_cast<long long>(n) * (t + 1) / threads);
        pool.emplace_back(block, t, begin, end);
    }
    for (auto& th : pool) th.join();
}

}  // namespace fracfem
