#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <iterator>
#include <thread>
#include <vector>

namespace sinklab {

// Splits [0, count) into `workers` contiguous blocks, runs fn(begin, end)
// on each concurrently, and concatenates the per-block vectors in block
// order. fn must be pure, so the merged result is independent of both
// scheduling and the worker count.
template <typename Fn>
auto collect_blocks(std::uint64_t count, unsigned workers, Fn fn) {
    using Part = decltype(fn(std::uint64_t{0}, std::uint64_t{0}));
    if (workers <= 1) return fn(0, count);

    const std::uint64_t base = count / workers;
    const std::uint64_t rem = count % workers;
    std::vector<Part> parts(workers);
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::uint64_t begin = 0;
    for (unsigned w = 0; w < workers; ++w) {
        const std::uint64_t end = begin + base + (w < rem ? 1 : 0);
        pool.emplace_back([&parts, &errors, &fn, w, begin, end] {
            try {
                parts[w] = fn(begin, end);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
        begin = end;
    }
    for (std::thread& t : pool) t.join();
    for (const std::exception_ptr& e : errors) {
        if (e) std::rethrow_exception(e);
    }

    Part merged;
    for (Part& p : parts) {
        merged.insert(merged.end(), std::make_move_iterator(p.begin()),
                      std::make_move_iterator(p.end()));
    }
    return merged;
}

} // namespace sinklab
