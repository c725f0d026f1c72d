#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace tsml::detail {

/// Runs fn(i) for every i in [0, n) across worker threads with a static
/// partition. Each index is processed exactly once and must write only to
/// its own output slot, so results are independent of scheduling. If workers
/// throw, the exception raised at the lowest index is rethrown.
template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn, std::size_t min_per_thread = 32) {
    if (n == 0) return;

    const std::size_t hw = std::max<std::size_t>(1, std::thread::hardware_concurrency());
    const std::size_t n_threads = std::min(hw, std::max<std::size_t>(1, n / min_per_thread));
    if (n_threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }

    struct Failure {
        std::exception_ptr error;
        std::size_t index = 0;
    };
    std::vector<Failure> failures(n_threads);
    std::vector<std::thread> workers;
    workers.reserve(n_threads);

    const std::size_t chunk = (n + n_threads - 1) / n_threads;
    for (std::size_t t = 0; t < n_threads; ++t) {
        const std::size_t begin = t * chunk;
        const std::size_t end = std::min(n, begin + chunk);
        workers.emplace_back([&, t, begin, end] {
            for (std::size_t i = begin; i < end; ++i) {
                try {
                    fn(i);
                } catch (...) {
                    failures[t] = {std::current_exception(), i};
                    return;
                }
            }
        });
    }
    for (auto& w : workers) w.join();

    const Failure* first = nullptr;
    for (const auto& f : failures) {
        if (f.error && (first == nullptr || f.index < first->index)) first = &f;
    }
    if (first != nullptr) std::rethrow_exception(first->error);
}

}  // namespace tsml::detail
