#pragma once

#include <algorithm>
#include <future>
#include <thread>
#include <vector>

namespace bergman {

/// Runs fn(i) for i in [begin, end) across hardware threads in fixed-size
/// chunks. Each index must be independent of the others; results written by
/// fn are deterministic regardless of scheduling. Falls back to a plain loop
/// on single-core hosts.
template <class Fn>
void parallel_for(long begin, long end, Fn&& fn) {
    const long count = end - begin;
    if (count <= 0) return;
    unsigned hw = std::thread::hardware_concurrency();
    if (hw <= 1 || count < 64) {
        for (long i = begin; i < end; ++i) fn(i);
        return;
    }
    const long chunks = std::min<long>(static_cast<long>(hw) * 4, count);
    const long step = (count + chunks - 1) / chunks;
    std::vector<std::future<void>> futures;
    futures.reserve(static_cast<size_t>(chunks));
    for (long c = begin; c < end; c += step) {
        const long hi = std::min(c + step, end);
        futures.push_back(std::async(std::launch::async, [c, hi, &fn] {
            for (long i = c; i < hi; ++i) fn(i);
        }));
    }
    for (auto& f : futures) f.get();
}

}  // namespace bergman
