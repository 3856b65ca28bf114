#include "wavese/threading.hpp"

#include <atomic>
#include <exception>
#include <thread>
#include <vector>

namespace wavese {

namespace {
std::atomic<std::size_t> g_max_threads{0};
}

void set_max_threads(std::size_t n) { g_max_threads.store(n); }

std::size_t max_threads() {
    std::size_t n = g_max_threads.load();
    if (n == 0) n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : n;
}

void parallel_rows(std::size_t n_rows, const std::function<void(std::size_t)>& fn) {
    const std::size_t n_workers = std::min(max_threads(), n_rows);
    if (n_workers <= 1) {
        for (std::size_t r = 0; r < n_rows; ++r) fn(r);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::atomic<bool> failed{false};
    auto worker = [&] {
        for (;;) {
            const std::size_t r = next.fetch_add(1);
            if (r >= n_rows || failed.load()) return;
            try {
                fn(r);
            } catch (...) {
                if (!failed.exchange(true)) error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (std::size_t t = 0; t < n_workers; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (failed.load() && error) std::rethrow_exception(error);
}

} // namespace wavese
