#pragma once

#include <thread>
#include <vector>

namespace ctvlab {

inline int resolve_workers(int requested)
{
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

// Evaluates f(i) for i in [0, n).  Work is striped across workers; callers
// collect per-index results and reduce in index order, which keeps outcomes
// independent of scheduling.
template <typename F>
void parallel_for(long n, int workers, F&& f)
{
    workers = resolve_workers(workers);
    if (workers <= 1 || n <= 1) {
        for (long i = 0; i < n; ++i) f(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            for (long i = w; i < n; i += workers) f(i);
        });
    for (auto& t : pool) t.join();
}

} // namespace ctvlab
