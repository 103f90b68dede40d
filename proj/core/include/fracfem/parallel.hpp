#pragma once
#include <functional>

namespace fracfem {

// requested > 0 wins, then FRACFEM_THREADS, then hardware concurrency.
int resolve_thread_count(int requested);

// Static block partition of [0, n); blocks run on their own threads and the
// caller joins all of them. block(thread_index, begin, end).
void parallel_blocks(int n, int threads, const std::function<void(int, int, int)>& block);

}  // namespace fracfem
