#include "maxwalk/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace maxwalk {

namespace {
std::atomic<unsigned> override_threads{0};

unsigned env_threads() {
    if (const char* s = std::getenv("MAXWALK_THREADS")) {
        try {
            const long v = std::stol(s);
            if (v > 0) return static_cast<unsigned>(v);
        } catch (...) {
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}
} // namespace

unsigned thread_count() {
    const unsigned o = override_threads.load();
    return o ? o : env_threads();
}

void set_thread_count(unsigned n) { override_threads.store(n); }

void parallel_for(std::size_t n, std::size_t grain,
                  const std::function<void(std::size_t, std::size_t)>& body) {
    if (n == 0) return;
    grain = std::max<std::size_t>(grain, 1);
    const std::size_t max_chunks = (n + grain - 1) / grain;
    const std::size_t workers = std::min<std::size_t>(thread_count(), max_chunks);
    if (workers <= 1) {
        body(0, n);
        return;
    }
    const std::size_t per = (n + workers - 1) / workers;
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t b = w * per, e = std::min(n, b + per);
        if (b >= e) break;
        pool.emplace_back([&, w, b, e] {
            try {
                body(b, e);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

} // namespace maxwalk
