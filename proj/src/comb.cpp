#include "rba/comb.hpp"

#include <algorithm>
#include <bit>

namespace rba {

namespace {

// Shared guard for brute-force searches.
struct StateBudget {
    uint64_t limit;
    uint64_t used = 0;
    const char* what;

    void tick(uint64_t n = 1) {
        used += n;
        if (used > limit) throw SizeLimit(std::string(what) + ": search space exceeds limit");
    }
};

// Advances idx to the next k-combination of {0,...,limit-1}; false at the end.
bool next_combination(std::vector<int>& idx, int limit) {
    const int k = static_cast<int>(idx.size());
    for (int i = k - 1; i >= 0; --i) {
        if (idx[i] < limit - (k - i)) {
            ++idx[i];
            for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
            return true;
        }
    }
    return false;
}

Int pow2(long e) {
    Int r;
    mpz_ui_pow_ui(r.get_mpz_t(), 2, static_cast<unsigned long>(e));
    return r;
}

} // namespace

Int factorial(int n) {
    if (n < 0) throw BadArguments("factorial: n must be >= 0");
    Int r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return r;
}

Int binomial(int n, int k) {
    if (n < 0 || k < 0) throw BadArguments("binomial: arguments must be >= 0");
    if (k > n) return 0;
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

Int multinomial(int n, const std::vector<int>& parts) {
    int sum = 0;
    for (int p : parts) {
        if (p < 0) throw BadArguments("multinomial: parts must be >= 0");
        sum += p;
    }
    if (sum != n) throw BadArguments("multinomial: parts must sum to n");
    Int r = 1;
    int rest = n;
    for (int p : parts) {
        r *= binomial(rest, p);
        rest -= p;
    }
    return r;
}

Int stirling2(int n, int k) {
    if (n < 0 || k < 0) return 0;
    if (k > n) return 0;
    if (n == 0) return k == 0 ? 1 : 0;
    // S(n,k) = k S(n-1,k) + S(n-1,k-1)
    std::vector<Int> row(static_cast<size_t>(n) + 1, 0);
    row[0] = 1;
    for (int i = 1; i <= n; ++i) {
        for (int j = std::min(i, n); j >= 1; --j) row[j] = j * row[j] + row[j - 1];
        row[0] = 0;
    }
    return row[k];
}

Int bell(int n) {
    if (n < 0) return 0;
    Int b = 0;
    for (int k = 0; k <= n; ++k) b += stirling2(n, k);
    return b;
}

Int gen_stirling_rec(int n, int k) {
    if (n < 0 || k < 0) return 0;
    if (k == 0) return n == 0 ? 1 : 0;
    if (k > n) return 0;
    std::vector<std::vector<Int>> s(static_cast<size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) s[i].assign(static_cast<size_t>(std::min(i, k)) + 1, 0);
    s[0][0] = 1;
    for (int nn = 1; nn <= n; ++nn) {
        for (int kk = 1; kk <= std::min(nn, k); ++kk) {
            Int acc = 0;
            for (int i = kk - 1; i <= nn - 1; ++i)
                acc += binomial(nn - 1, i) * pow2(i) * s[i][kk - 1];
            s[nn][kk] = acc;
        }
    }
    return s[n][k];
}

Int gen_stirling_explicit(int n, int k) {
    if (n < k || k < 1) throw BadArguments("gen_stirling_explicit: requires n >= k >= 1");
    const int d = n - k;
    Int sum = 0;
    if (d == 0) {
        sum = 1;  // empty choice, empty product
    } else {
        std::vector<int> m(static_cast<size_t>(d));
        for (int i = 0; i < d; ++i) m[i] = i;  // encodes m_i = idx + 1 in [1, n-1]
        do {
            Int prod = 1;
            for (int i = 0; i < d; ++i) {
                const int mi = m[i] + 1;
                prod *= pow2(k - mi + (i + 1)) - 1;
            }
            sum += prod;
        } while (next_combination(m, n - 1));
    }
    return pow2(static_cast<long>(k) * (k - 1) / 2) * sum;
}

Int gen_bell(int n) {
    if (n < 1) throw BadArguments("gen_bell: n must be >= 1");
    Int b = 0;
    for (int k = 1; k <= n; ++k) b += gen_stirling_rec(n, k);
    return b;
}

Composition::Composition(std::vector<int> p) : parts(std::move(p)) {
    for (int x : parts) {
        if (x < 1) throw BadArguments("Composition: parts must be >= 1");
    }
}

int Composition::norm() const {
    int s = 0;
    for (int p : parts) s += p;
    return s;
}

std::vector<Composition> compositions_bounded(int total, int maxpart, uint64_t limit) {
    if (total < 0 || maxpart < 1) throw BadArguments("compositions_bounded: bad arguments");
    StateBudget budget{limit, 0, "compositions_bounded"};
    std::vector<Composition> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int rest) -> void {
        budget.tick();
        if (rest == 0) {
            out.push_back(Composition(cur));
            return;
        }
        for (int p = 1; p <= std::min(maxpart, rest); ++p) {
            cur.push_back(p);
            self(self, rest - p);
            cur.pop_back();
        }
    };
    rec(rec, total);
    return out;
}

namespace {

// All l-subsets of [n] as bitmasks (bit j-1 = element j), ascending.
std::vector<uint32_t> subset_masks(int n, int l) {
    std::vector<uint32_t> masks;
    if (l > n || l < 0) return masks;
    if (l == 0) return {0};
    std::vector<int> idx(static_cast<size_t>(l));
    for (int i = 0; i < l; ++i) idx[i] = i;
    do {
        uint32_t m = 0;
        for (int i : idx) m |= uint32_t(1) << i;
        masks.push_back(m);
    } while (next_combination(idx, n));
    return masks;
}

std::vector<int> mask_to_elems(uint32_t m) {
    std::vector<int> v;
    for (int j = 0; m; ++j, m >>= 1)
        if (m & 1) v.push_back(j + 1);
    return v;
}

// Enumerates k-tuples of l-subsets of [n] with union [n]; calls visit with
// the chosen masks. distinct_max additionally forces strictly increasing
// block maxima (each collection visited once, in max order).
template <typename Visit>
void for_each_cover(int n, int k, int l, bool distinct_max, uint64_t limit, Visit&& visit) {
    if (n > 31) throw SizeLimit("cover enumeration: n too large");
    const auto masks = subset_masks(n, l);
    const uint32_t full = n == 0 ? 0 : (uint32_t(1) << n) - 1;
    StateBudget budget{limit, 0, "cover enumeration"};
    std::vector<uint32_t> chosen(static_cast<size_t>(k));
    auto rec = [&](auto&& self, int pos, uint32_t covered, int prev_max) -> void {
        budget.tick();
        if (pos == k) {
            if (covered == full) visit(chosen);
            return;
        }
        // Remaining blocks cannot cover more than (k-pos)*l missing elements.
        if (std::popcount(full & ~covered) > (k - pos) * l) return;
        for (uint32_t m : masks) {
            if (distinct_max) {
                const int mx = 32 - std::countl_zero(m);
                if (mx <= prev_max) continue;
                chosen[pos] = m;
                self(self, pos + 1, covered | m, mx);
            } else {
                chosen[pos] = m;
                self(self, pos + 1, covered | m, 0);
            }
        }
    };
    rec(rec, 0, 0, 0);
}

} // namespace

Int cover_count(int n, int k, int l, uint64_t limit) {
    if (k < 1 || l < 1 || n < l || n > k * l) return 0;
    uint64_t count = 0;
    for_each_cover(n, k, l, false, limit, [&](const std::vector<uint32_t>&) { ++count; });
    return Int(static_cast<unsigned long>(count));
}

std::vector<std::vector<std::vector<int>>> enum_covers(int n, int k, int l, uint64_t limit) {
    std::vector<std::vector<std::vector<int>>> out;
    if (k < 1 || l < 1 || n < l || n > k * l) return out;
    for_each_cover(n, k, l, false, limit, [&](const std::vector<uint32_t>& masks) {
        std::vector<std::vector<int>> tuple;
        tuple.reserve(masks.size());
        for (uint32_t m : masks) tuple.push_back(mask_to_elems(m));
        out.push_back(std::move(tuple));
    });
    return out;
}

Int cover_count_distinct_max(int n, int k, int l, uint64_t limit) {
    if (k < 1 || l < 1 || n < k + l - 1 || n > k * l) return 0;
    uint64_t count = 0;
    for_each_cover(n, k, l, true, limit, [&](const std::vector<uint32_t>&) { ++count; });
    return Int(static_cast<unsigned long>(count));
}

namespace {

// Generalized partitions of [n], blocks in max-increasing order. The
// recursion walks candidate maxima m = n..1; an uncovered m must start a
// block (no later block can contain it), which is the key prune. Blocks
// are accumulated max-descending and emitted reversed.
template <typename Visit>
void gp_enumerate(int n, std::optional<int> k, uint64_t limit, Visit&& visit) {
    if (n < 1) throw BadArguments("generalized partitions: n must be >= 1");
    if (n > 24) throw SizeLimit("generalized partitions: n too large to enumerate");
    const uint32_t full = (uint32_t(1) << n) - 1;
    StateBudget budget{limit, 0, "generalized partitions"};
    std::vector<uint32_t> blocks_desc;
    std::vector<uint32_t> ordered;
    auto rec = [&](auto&& self, int m, uint32_t covered) -> void {
        budget.tick();
        if (k && static_cast<int>(blocks_desc.size()) + m < *k) return;  // too few maxima left
        if (m == 0) {
            if (covered != full) return;
            if (k && static_cast<int>(blocks_desc.size()) != *k) return;
            ordered.assign(blocks_desc.rbegin(), blocks_desc.rend());
            visit(ordered);
            return;
        }
        const uint32_t bit = uint32_t(1) << (m - 1);
        if (covered & bit) self(self, m - 1, covered);  // m is not a maximum
        if (k && static_cast<int>(blocks_desc.size()) == *k) return;  // block budget spent
        const uint32_t space = bit - 1;  // subsets of [m-1]
        uint32_t s = 0;
        while (true) {
            blocks_desc.push_back(bit | s);
            self(self, m - 1, covered | bit | s);
            blocks_desc.pop_back();
            if (s == space) break;
            s = (s - space) & space;
        }
    };
    rec(rec, n, 0);
}

} // namespace

void for_each_generalized_partition(int n, std::optional<int> k,
                                    const std::function<void(const std::vector<uint32_t>&)>& visit,
                                    uint64_t limit) {
    gp_enumerate(n, k, limit, visit);
}

std::vector<std::vector<std::vector<int>>> enum_generalized_partitions(int n, std::optional<int> k,
                                                                       uint64_t limit) {
    std::vector<std::vector<std::vector<int>>> out;
    gp_enumerate(n, k, limit, [&](const std::vector<uint32_t>& blocks) {
        std::vector<std::vector<int>> p;
        p.reserve(blocks.size());
        for (uint32_t b : blocks) p.push_back(mask_to_elems(b));
        out.push_back(std::move(p));
    });
    return out;
}

Int count_generalized_partitions(int n, int k, uint64_t limit) {
    if (n < 1) throw BadArguments("count_generalized_partitions: n must be >= 1");
    if (k < 1 || k > n) return 0;
    if (n > 24) throw SizeLimit("count_generalized_partitions: n too large");
    uint64_t visited = 0;
    uint64_t count = 0;
    // Same walk as gp_enumerate, stripped to a counter. blocks_left == 0
    // collapses the tail: every remaining value must already be covered.
    auto rec = [&](auto&& self, int m, uint32_t covered, int blocks_left) -> void {
        if (++visited > limit)
            throw SizeLimit("count_generalized_partitions: search space exceeds limit");
        if (blocks_left == 0) {
            const uint32_t need = m == 0 ? 0 : (uint32_t(1) << m) - 1;
            if ((covered & need) == need) ++count;
            return;
        }
        if (m < blocks_left) return;
        const uint32_t bit = uint32_t(1) << (m - 1);
        if (covered & bit) self(self, m - 1, covered, blocks_left);
        const uint32_t space = bit - 1;
        uint32_t s = 0;
        while (true) {
            self(self, m - 1, covered | bit | s, blocks_left - 1);
            if (s == space) break;
            s = (s - space) & space;
        }
    };
    rec(rec, n, 0, k);
    return Int(static_cast<unsigned long>(count));
}

Int restricted_type_count(int n, int k, const Composition& I, uint64_t limit) {
    if (n < 1 || k < 1) throw BadArguments("restricted_type_count: n, k must be >= 1");
    if (I.norm() != n * k) throw BadArguments("restricted_type_count: |I| must equal kn");
    for (int p : I.parts) {
        if (p > n) throw BadArguments("restricted_type_count: parts must be <= n");
    }
    StateBudget budget{limit, 0, "restricted_type_count"};
    std::vector<int> mult(static_cast<size_t>(n) + 1, k);  // remaining copies of each element
    uint64_t count = 0;
    const int t = I.length();
    // Fill blocks left to right; each block is a size-i_j subset of the
    // elements with remaining multiplicity.
    auto fill = [&](auto&& self, int j, int from, int need) -> void {
        budget.tick();
        if (need == 0) {
            if (j + 1 == t) {
                ++count;
                return;
            }
            self(self, j + 1, 1, I.parts[j + 1]);
            return;
        }
        for (int e = from; e + need - 1 <= n; ++e) {
            if (mult[e] == 0) continue;
            --mult[e];
            self(self, j, e + 1, need - 1);
            ++mult[e];
        }
    };
    if (t == 0) {
        count = (n * k == 0) ? 1 : 0;
    } else {
        fill(fill, 0, 1, I.parts[0]);
    }
    return Int(static_cast<unsigned long>(count));
}

Int multiset_partition_total(int n, int k, uint64_t limit) {
    if (n < 1 || k < 1) throw BadArguments("multiset_partition_total: n, k must be >= 1");
    Int total = 0;
    for (const Composition& I : compositions_bounded(n * k, n, limit))
        total += restricted_type_count(n, k, I, limit);
    return total;
}

Int CombTables::get(const std::string& family, int a, int b) {
    const auto key = std::make_tuple(family, a, b);
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
    }
    Int value;
    if (family == "stirling2") value = rba::stirling2(a, b);
    else if (family == "bell") value = rba::bell(a);
    else if (family == "gen-stirling") value = rba::gen_stirling_rec(a, b);
    else if (family == "gen-bell") value = rba::gen_bell(a);
    else if (family == "binomial") value = rba::binomial(a, b);
    else if (family == "factorial") value = rba::factorial(a);
    else throw BadArguments("CombTables: unknown family " + family);
    std::lock_guard<std::mutex> lock(mu_);
    return memo_.emplace(key, value).first->second;
}

} // namespace rba
