#pragma once

#include <doctest.h>

#include <initializer_list>
#include <utility>
#include <vector>

#include "rba/core.hpp"

namespace rba::test {

inline TensorWord W(std::initializer_list<uint32_t> exps) {
    return TensorWord(std::vector<uint32_t>(exps));
}

inline Rat Q(long num, long den = 1) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline RBAElement el(std::initializer_list<std::pair<TensorWord, Rat>> terms) {
    RBAElement e;
    for (const auto& [w, c] : terms) e.add_term(w, c);
    return e;
}

// Independent oracle: partitions of [n] into nonempty disjoint blocks,
// counted by assigning each element to an existing block or a new one.
inline long count_set_partitions(int n, int k) {
    long count = 0;
    auto rec = [&](auto&& self, int i, int blocks) -> void {
        if (i == n) {
            if (blocks == k) ++count;
            return;
        }
        for (int b = 0; b < blocks; ++b) self(self, i + 1, blocks);
        self(self, i + 1, blocks + 1);
    };
    rec(rec, 0, 0);
    return count;
}

inline long count_all_set_partitions(int n) {
    long total = 0;
    for (int k = 0; k <= n; ++k) total += count_set_partitions(n, k);
    return total;
}

} // namespace rba::test
