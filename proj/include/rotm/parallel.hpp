#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

#include "rotm/simulator.hpp"

namespace rotm {

// Splits [0, count) into `jobs` contiguous blocks and runs fn(block, begin, end)
// for each, one thread per block. Exceptions are rethrown in block order.
template <class Fn>
void for_each_block(std::uint64_t count, unsigned jobs, Fn&& fn) {
    jobs = std::max(1u, jobs);
    if (count < jobs) jobs = static_cast<unsigned>(std::max<std::uint64_t>(count, 1));
    const std::uint64_t per = count / jobs, extra = count % jobs;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> ranges;
    std::uint64_t begin = 0;
    for (unsigned b = 0; b < jobs; ++b) {
        const std::uint64_t len = per + (b < extra ? 1 : 0);
        ranges.emplace_back(begin, begin + len);
        begin += len;
    }
    if (jobs == 1) {
        fn(0u, ranges[0].first, ranges[0].second);
        return;
    }
    std::vector<std::exception_ptr> errors(jobs);
    std::vector<std::thread> threads;
    for (unsigned b = 0; b < jobs; ++b)
        threads.emplace_back([&, b] {
            try {
                fn(b, ranges[b].first, ranges[b].second);
            } catch (...) {
                errors[b] = std::current_exception();
            }
        });
    for (auto& t : threads) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

// The index-th word of the given length in lexicographic order over an
// alphabet of `radix` symbols (symbol 0 first).
inline Word word_at(std::uint64_t index, std::size_t length, std::size_t radix) {
    Word w(length, 0);
    for (std::size_t i = length; i-- > 0;) {
        w[i] = static_cast<SymbolId>(index % radix);
        index /= radix;
    }
    return w;
}

}  // namespace rotm
