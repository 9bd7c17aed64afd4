#include "vhj/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace vhj {

namespace {

std::atomic<std::size_t> g_override{0};

std::size_t environment_workers() {
    static const std::size_t cached = [] {
        std::size_t n = 0;
        if (const char* env = std::getenv("CHJ_THREADS")) {
            try {
                n = static_cast<std::size_t>(std::stoul(env));
            } catch (const std::exception&) {
                n = 0;
            }
        }
        if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
        return n;
    }();
    return cached;
}

}  // namespace

std::size_t worker_count() {
    const std::size_t o = g_override.load();
    return o != 0 ? o : environment_workers();
}

void set_worker_count(std::size_t n) { g_override.store(n); }

void parallel_for(std::size_t n,
                  const std::function<void(std::size_t, std::size_t, std::size_t)>& body) {
    if (n == 0) return;
    const std::size_t workers = std::min(worker_count(), n);
    if (workers <= 1) {
        body(0, n, 0);
        return;
    }
    const std::size_t chunk = (n + workers - 1) / workers;
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    auto run = [&](std::size_t w) {
        const std::size_t begin = w * chunk;
        const std::size_t end = std::min(n, begin + chunk);
        if (begin >= end) return;
        try {
            body(begin, end, w);
        } catch (...) {
            errors[w] = std::current_exception();
        }
    };
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(run, w);
    run(0);
    for (auto& th : pool) th.join();
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

}  // namespace vhj
