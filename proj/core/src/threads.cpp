#include "curvewidth/threads.hpp"

#include <atomic>
#include <cstdlib>
#include <thread>

namespace curvewidth {

int worker_count() {
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw <= 0) hw = 1;
    if (const char* env = std::getenv("CURVEWIDTH_THREADS")) {
        int cap = std::atoi(env);
        if (cap >= 1 && cap < hw) hw = cap;
        if (cap >= 1 && cap >= hw) hw = cap;
    }
    return hw;
}

std::vector<std::uint64_t> run_chunked(int chunks,
                                       const std::function<std::uint64_t(int)>& fn) {
    std::vector<std::uint64_t> out(static_cast<size_t>(chunks), 0);
    int workers = std::min(worker_count(), chunks);
    if (workers <= 1) {
        for (int c = 0; c < chunks; ++c) out[c] = fn(c);
        return out;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&]() {
            while (true) {
                int c = next.fetch_add(1);
                if (c >= chunks) return;
                out[c] = fn(c);
            }
        });
    }
    for (auto& t : pool) t.join();
    return out;
}

}  // namespace curvewidth
