#include "mpemba/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace mpemba {

std::size_t scan_thread_count() {
    if (const char* env = std::getenv("MPEMBA_THREADS")) {
        try {
            const long n = std::stol(env);
            if (n >= 1) return static_cast<std::size_t>(n);
        } catch (...) {
            // fall through to the default
        }
        return 1;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    const std::size_t workers = std::min(scan_thread_count(), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
                fn(i);
            }
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace mpemba
