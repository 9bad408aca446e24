#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "rba/errors.hpp"
#include "rba/rational.hpp"

namespace rba {

// Default cap on the number of states an enumeration may visit before it
// throws SizeLimit. Callers with a real need pass a larger bound.
inline constexpr uint64_t kDefaultEnumLimit = 10'000'000;

Int factorial(int n);
Int binomial(int n, int k);
Int multinomial(int n, const std::vector<int>& parts);

// Stirling numbers of the second kind and Bell numbers, by the standard
// recurrences; 0 outside the valid range.
Int stirling2(int n, int k);
Int bell(int n);

// Generalized Stirling numbers: partitions of [n] into k nonempty,
// possibly overlapping blocks with union [n] and pairwise distinct maxima.
Int gen_stirling_rec(int n, int k);       // recurrence path
Int gen_stirling_explicit(int n, int k);  // explicit-sum path, n >= k >= 1
Int gen_bell(int n);                      // sum over k, n >= 1

// Composition of an integer into positive parts. The empty composition is
// allowed as the unique composition of 0.
struct Composition {
    std::vector<int> parts;

    Composition() = default;
    explicit Composition(std::vector<int> p);  // BadArguments if a part < 1

    int norm() const;
    int length() const { return static_cast<int>(parts.size()); }

    friend auto operator<=>(const Composition&, const Composition&) = default;
};

// All compositions of `total` with every part <= maxpart.
std::vector<Composition> compositions_bounded(int total, int maxpart,
                                              uint64_t limit = kDefaultEnumLimit);

// B(n,k,l): k-tuples of l-subsets of [n] with union [n]; 0 outside
// l <= n <= k*l. Counted by direct enumeration.
Int cover_count(int n, int k, int l, uint64_t limit = kDefaultEnumLimit);

// The tuples themselves, blocks as sorted element lists.
std::vector<std::vector<std::vector<int>>> enum_covers(int n, int k, int l,
                                                       uint64_t limit = kDefaultEnumLimit);

// B'(n,k,l): as B(n,k,l) but with pairwise distinct block maxima,
// collections counted once in max-increasing order; 0 outside
// k+l-1 <= n <= k*l.
Int cover_count_distinct_max(int n, int k, int l, uint64_t limit = kDefaultEnumLimit);

// Generalized partitions of [n] (optionally with exactly k blocks) in
// max-increasing block order; blocks as sorted element lists.
std::vector<std::vector<std::vector<int>>> enum_generalized_partitions(
    int n, std::optional<int> k = std::nullopt, uint64_t limit = kDefaultEnumLimit);

// Visitor form over the same enumeration; blocks passed as bitmasks over
// {1,...,n} (bit j-1 = element j), in max-increasing order. Requires n <= 24.
void for_each_generalized_partition(int n, std::optional<int> k,
                                    const std::function<void(const std::vector<uint32_t>&)>& visit,
                                    uint64_t limit = kDefaultEnumLimit);

// Counting-only enumeration (no materialization); visits every partition.
Int count_generalized_partitions(int n, int k, uint64_t limit = kDefaultEnumLimit);

// C_I: ordered tuples (B_1,...,B_t) of subsets of [n] with |B_j| = i_j
// partitioning the multiset {1^k,...,n^k}. Requires |I| = kn, parts <= n.
Int restricted_type_count(int n, int k, const Composition& I,
                          uint64_t limit = kDefaultEnumLimit);

// C(n,k) = sum of C_I over all I in pi(kn) (compositions with parts <= n).
Int multiset_partition_total(int n, int k, uint64_t limit = kDefaultEnumLimit);

// Memo layer over the table families above. Values are cached under a
// (family, arguments) key; reads and writes are mutex-guarded so the table
// can be shared across threads.
class CombTables {
  public:
    Int stirling2(int n, int k) { return get("stirling2", n, k); }
    Int bell(int n) { return get("bell", n, 0); }
    Int gen_stirling(int n, int k) { return get("gen-stirling", n, k); }
    Int gen_bell(int n) { return get("gen-bell", n, 0); }
    Int binomial(int n, int k) { return get("binomial", n, k); }
    Int factorial(int n) { return get("factorial", n, 0); }

  private:
    Int get(const std::string& family, int a, int b);

    std::mutex mu_;
    std::map<std::tuple<std::string, int, int>, Int> memo_;
};

} // namespace rba
