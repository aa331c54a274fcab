#include "rrvqa/parallel.hpp"

#include <atomic>
#include <exception>
#include <thread>
#include <vector>

namespace rrvqa {

int resolve_thread_count(int requested) {
    if (requested > 0) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

void parallel_for(size_t count, int threads, const std::function<void(size_t)>& fn) {
    threads = resolve_thread_count(threads);
    if (count == 0) return;
    if (threads == 1 || count == 1) {
        for (size_t i = 0; i < count; ++i) fn(i);
        return;
    }

    const size_t workers = std::min<size_t>(static_cast<size_t>(threads), count);
    std::atomic<size_t> next{0};
    std::exception_ptr error;
    std::atomic<bool> failed{false};

    auto body = [&] {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= count || failed.load()) return;
            try {
                fn(i);
            } catch (...) {
                if (!failed.exchange(true)) error = std::current_exception();
                return;
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (size_t t = 1; t < workers; ++t) pool.emplace_back(body);
    body();
    for (auto& t : pool) t.join();

    if (failed.load() && error) std::rethrow_exception(error);
}

}  // namespace rrvqa
