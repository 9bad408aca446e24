#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "test_util.hpp"

#include <random>
#include <thread>

#include "rba/comb.hpp"

using namespace rba;
using namespace rba::test;

namespace {

const std::vector<Rat> kWeights = {Q(0), Q(1), Q(2), Q(5, 3)};

RBAElement word_el(std::initializer_list<uint32_t> exps) {
    return RBAElement::from_word(W(exps), 1);
}

std::vector<TensorWord> small_words(int max_len, uint32_t emax) {
    std::vector<TensorWord> out;
    for (int len = 1; len <= max_len; ++len) {
        std::vector<uint32_t> cur(static_cast<size_t>(len), 0);
        while (true) {
            out.push_back(TensorWord(cur));
            int i = len - 1;
            while (i >= 0 && cur[static_cast<size_t>(i)] == emax) cur[static_cast<size_t>(i--)] = 0;
            if (i < 0) break;
            ++cur[static_cast<size_t>(i)];
        }
    }
    return out;
}

RBAElement random_element(std::mt19937_64& rng, int max_terms, int max_tail, uint32_t emax) {
    RBAElement e;
    const int nterms = 1 + static_cast<int>(rng() % static_cast<uint64_t>(max_terms));
    for (int t = 0; t < nterms; ++t) {
        std::vector<uint32_t> exps(1 + rng() % static_cast<uint64_t>(max_tail + 1));
        for (auto& x : exps) x = static_cast<uint32_t>(rng() % (emax + 1));
        long num = static_cast<long>(rng() % 9) - 4;
        if (num == 0) num = 2;
        e.add_term(TensorWord(std::move(exps)), Q(num, static_cast<long>(rng() % 3) + 1));
    }
    return e;
}

} // namespace

TEST_CASE("tensor word basics") {
    CHECK(TensorWord().degree() == 0);
    CHECK(TensorWord::one(0) == TensorWord());
    CHECK(TensorWord::one(3) == W({0, 0, 0, 0}));
    CHECK(TensorWord::one(3).degree() == 3);
    CHECK(TensorWord::single_variable(2) == W({0, 1, 1}));
    CHECK(TensorWord::single_variable(0) == TensorWord());
    CHECK(TensorWord::from_tail({1, 2, 1}) == W({0, 1, 2, 1}));
    CHECK(W({0, 0}).is_scalar());
    CHECK_FALSE(W({0, 1}).is_scalar());
    CHECK_THROWS_AS(TensorWord(std::vector<uint32_t>{}), BadArguments);
    // lexicographic order puts shorter prefixes first
    CHECK(W({0, 0}) < W({0, 0, 0}));
    CHECK(W({0, 0, 0}) < W({0, 1}));
}

TEST_CASE("element canonical form") {
    RBAElement e;
    e.add_term(W({0, 0, 0}), Q(1));
    e.add_term(W({0, 0, 0}), Q(-1));
    CHECK(e.is_zero());
    e.add_term(W({0, 1}), Q(1, 2));
    e.add_term(W({0, 1}), Q(1, 2));
    CHECK(e.coeff(W({0, 1})) == Q(1));
    CHECK(e.terms().size() == 1);
    CHECK(RBAElement::one(2, Q(0)).is_zero());
}

TEST_CASE("recursive product reproduces the worked example") {
    // (1 (x) x (x) x^2)(1 (x) x^3)
    for (const Rat& lam : kWeights) {
        const AlgebraContext ctx(lam, 10);
        const RBAElement got = word_product_recursive(W({0, 1, 2}), W({0, 3}), ctx);
        const RBAElement want = el({{W({0, 1, 2, 3}), Q(1)},
                                    {W({0, 1, 3, 2}), Q(1)},
                                    {W({0, 3, 1, 2}), Q(1)},
                                    {W({0, 1, 5}), lam},
                                    {W({0, 4, 2}), lam}});
        CHECK(got == want);
    }
}

TEST_CASE("single-factor words multiply as monomials") {
    const AlgebraContext ctx(Q(7), 10);
    CHECK(word_product_recursive(W({5}), W({0}), ctx) == word_el({5}));
    CHECK(word_product_recursive(W({2}), W({3}), ctx) == word_el({5}));
    CHECK(word_product_stuffle(W({5}), W({0}), ctx) == word_el({5}));
}

TEST_CASE("one(1) squared") {
    for (const Rat& lam : kWeights) {
        const AlgebraContext ctx(lam, 10);
        const RBAElement want = el({{TensorWord::one(2), Q(2)}, {TensorWord::one(1), lam}});
        CHECK(word_product_recursive(TensorWord::one(1), TensorWord::one(1), ctx) == want);
        CHECK(word_product_stuffle(TensorWord::one(1), TensorWord::one(1), ctx) == want);
    }
}

TEST_CASE("stuffle product examples") {
    const AlgebraContext ctx(Q(5, 3), 10);
    // one(1) * one(2) = 3 one(3) + 2 lambda one(2): J_{1,2,0} has 3 pairs,
    // J_{1,2,1} has 2.
    const RBAElement got = word_product_stuffle(TensorWord::one(1), TensorWord::one(2), ctx);
    CHECK(got == el({{TensorWord::one(3), Q(3)}, {TensorWord::one(2), Q(10, 3)}}));

    for (const auto& w : small_words(3, 2)) {
        CHECK(word_product_stuffle(w, TensorWord(), ctx) == RBAElement::from_word(w, 1));
        CHECK(word_product_stuffle(TensorWord(), w, ctx) == RBAElement::from_word(w, 1));
    }

    const RBAElement worked = word_product_stuffle(W({0, 1, 2}), W({0, 3}), ctx);
    CHECK(worked == word_product_recursive(W({0, 1, 2}), W({0, 3}), ctx));
    CHECK(worked.terms().size() == 5);
}

TEST_CASE("element_mul basics") {
    const AlgebraContext ctx0(Q(0), 10);
    const RBAElement e = element_add(RBAElement::one(1), RBAElement::one(2));
    CHECK(element_mul(e, RBAElement::unit(), ctx0) == e);
    CHECK(element_mul(RBAElement::one(1), RBAElement::one(1), ctx0) == RBAElement::one(2, Q(2)));
    CHECK(element_mul(word_el({0, 1}), word_el({0, 1}), ctx0) ==
          RBAElement::from_word(W({0, 1, 1}), Q(2)));
    CHECK(element_mul(RBAElement(), e, ctx0).is_zero());
}

TEST_CASE("element add and scale") {
    const RBAElement e = el({{W({0, 0}), Q(1)}, {W({0, 1}), Q(-2, 3)}});
    CHECK(element_add(e, RBAElement()) == e);
    CHECK(element_add(RBAElement::one(2), element_scale(Q(-1), RBAElement::one(2))).is_zero());
    CHECK(element_scale(Q(3), element_add(RBAElement::one(1), RBAElement::one(3))) ==
          el({{TensorWord::one(1), Q(3)}, {TensorWord::one(3), Q(3)}}));
    CHECK(element_sub(e, e).is_zero());
}

TEST_CASE("rota-baxter operator") {
    const AlgebraContext ctx(Q(1), 10);
    for (int k = 0; k <= 6; ++k)
        CHECK(rb_apply(RBAElement::one(k), ctx) == RBAElement::one(k + 1));
    CHECK(rb_apply(word_el({5}), ctx) == word_el({0, 5}));
    CHECK(rb_apply(RBAElement(), ctx).is_zero());
    // words past the cap are dropped
    const AlgebraContext tight(Q(1), 2);
    CHECK(rb_apply(RBAElement::one(2), tight).is_zero());
}

TEST_CASE("derivation on the scalar subalgebra") {
    const AlgebraContext ctx(Q(1), 10);
    CHECK(derive(RBAElement::one(3), ctx) == RBAElement::one(2));
    CHECK(derive(RBAElement::unit(), ctx).is_zero());
    CHECK_THROWS_AS(derive(word_el({0, 1}), ctx), NonScalarWord);
    // d(P(e)) = e on scalars
    std::mt19937_64 rng(7);
    for (int i = 0; i < 50; ++i) {
        RBAElement e;
        for (int t = 0; t < 3; ++t)
            e.add_term(TensorWord::one(static_cast<int>(rng() % 6)),
                       Q(static_cast<long>(rng() % 7) - 3));
        CHECK(derive(rb_apply(e, ctx), ctx) == e);
    }
}

TEST_CASE("one_mul_closed matches the closed form and the products") {
    for (const Rat& lam : kWeights) {
        const AlgebraContext ctx(lam, 20);
        CHECK(one_mul_closed(1, 1, ctx) ==
              el({{TensorWord::one(2), Q(2)}, {TensorWord::one(1), lam}}));
        CHECK(one_mul_closed(4, 0, ctx) == RBAElement::one(4));
        CHECK(one_mul_closed(2, 2, ctx) == el({{TensorWord::one(4), Q(6)},
                                               {TensorWord::one(3), Q(6) * lam},
                                               {TensorWord::one(2), lam * lam}}));
        for (int m = 0; m <= 8; ++m) {
            for (int n = 0; n <= 8; ++n) {
                const RBAElement closed = one_mul_closed(m, n, ctx);
                CHECK(closed == element_mul(RBAElement::one(m), RBAElement::one(n), ctx));
                if (lam == 0) {
                    CHECK(closed == RBAElement::one(m + n, Rat(binomial(m + n, m))));
                }
            }
        }
    }
}

TEST_CASE("powers") {
    const AlgebraContext ctx(Q(5, 3), 10);
    const Rat lam = ctx.lambda;
    CHECK(element_pow(RBAElement::one(1), 3, ctx) == el({{TensorWord::one(1), lam * lam},
                                                         {TensorWord::one(2), Q(6) * lam},
                                                         {TensorWord::one(3), Q(6)}}));
    const AlgebraContext ctx0(Q(0), 10);
    CHECK(element_pow(word_el({0, 1}), 3, ctx0) == RBAElement::from_word(W({0, 1, 1, 1}), Q(6)));
    CHECK(element_pow(RBAElement::one(2), 0, ctx) == RBAElement::unit());
    CHECK_THROWS_AS(element_pow(RBAElement::unit(), -1, ctx), BadArguments);

    const auto powers = power_list(RBAElement::one(1), 4, ctx);
    REQUIRE(powers.size() == 5);
    CHECK(powers[0] == RBAElement::unit());
    for (int i = 1; i <= 4; ++i) CHECK(powers[static_cast<size_t>(i)] == element_pow(RBAElement::one(1), i, ctx));
}

TEST_CASE("geometric inverse") {
    const AlgebraContext ctx(Q(0), 6);
    const RBAElement inv = geometric_inverse(RBAElement::one(2), ctx);
    CHECK(inv == el({{TensorWord::one(0), Q(1)},
                     {TensorWord::one(2), Q(1)},
                     {TensorWord::one(4), Q(6)},
                     {TensorWord::one(6), Q(90)}}));
    CHECK(geometric_inverse(RBAElement(), ctx) == RBAElement::unit());

    const AlgebraContext ctx3(Q(0), 3);
    CHECK(geometric_inverse(word_el({0, 1}), ctx3) == el({{TensorWord::one(0), Q(1)},
                                                          {W({0, 1}), Q(1)},
                                                          {W({0, 1, 1}), Q(2)},
                                                          {W({0, 1, 1, 1}), Q(6)}}));

    CHECK_THROWS_AS(geometric_inverse(RBAElement::one(2), AlgebraContext(Q(1), 6)), NonzeroWeight);
    CHECK_THROWS_AS(geometric_inverse(RBAElement::unit(), ctx), NonPositiveDegree);
}

TEST_CASE("backend equivalence on all small word pairs") {
    const auto words = small_words(3, 3);
    for (const Rat& lam : kWeights) {
        const AlgebraContext ctx(lam, 8);
        for (const auto& a : words) {
            for (const auto& b : words) {
                if (a.exponents().size() + b.exponents().size() > 4) continue;
                CHECK(word_product_recursive(a, b, ctx) == word_product_stuffle(a, b, ctx));
            }
        }
    }
}

TEST_CASE("backends agree under tight truncation") {
    // The recursive product prunes inside its DP; the stuffle backend
    // drops whole overlap classes. Both must land on the same truncation.
    const auto words = small_words(3, 2);
    for (const Rat& lam : {Q(0), Q(1), Q(5, 3)}) {
        for (int trunc = 0; trunc <= 5; ++trunc) {
            const AlgebraContext ctx(lam, trunc);
            for (const auto& a : words) {
                for (const auto& b : words) {
                    const RBAElement rec = word_product_recursive(a, b, ctx);
                    CHECK(rec == word_product_stuffle(a, b, ctx));
                    CHECK(rec.max_degree() <= trunc);
                    // and truncation commutes with the full product
                    const AlgebraContext wide(lam, 12);
                    CHECK(rec == word_product_recursive(a, b, wide).truncated(trunc));
                }
            }
        }
    }
}

TEST_CASE("commutativity and associativity on random elements") {
    std::mt19937_64 rng(42);
    for (int i = 0; i < 200; ++i) {
        const Rat lam = kWeights[rng() % kWeights.size()];
        const RBAElement x = random_element(rng, 3, 2, 2);
        const RBAElement y = random_element(rng, 3, 2, 2);
        const RBAElement z = random_element(rng, 2, 2, 2);
        // loss-free cap: no word can outgrow the sum of the degrees
        const int cap = std::max(0, x.max_degree()) + std::max(0, y.max_degree()) +
                        std::max(0, z.max_degree());
        const AlgebraContext ctx(lam, cap);
        CHECK(element_mul(x, y, ctx) == element_mul(y, x, ctx));
        CHECK(element_mul(element_mul(x, y, ctx), z, ctx) ==
              element_mul(x, element_mul(y, z, ctx), ctx));
    }
}

TEST_CASE("rota-baxter axiom on random elements") {
    std::mt19937_64 rng(1234);
    for (int i = 0; i < 100; ++i) {
        const RBAElement x = random_element(rng, 3, 2, 2);
        const RBAElement y = random_element(rng, 3, 2, 2);
        const int cap = std::max(0, x.max_degree()) + std::max(0, y.max_degree()) + 2;
        for (const Rat& lam : kWeights) {
            const AlgebraContext ctx(lam, cap);
            const RBAElement px = rb_apply(x, ctx);
            const RBAElement py = rb_apply(y, ctx);
            const RBAElement lhs = element_mul(px, py, ctx);
            const RBAElement rhs = element_add(
                element_add(rb_apply(element_mul(x, py, ctx), ctx),
                            rb_apply(element_mul(px, y, ctx), ctx)),
                element_scale(lam, rb_apply(element_mul(x, y, ctx), ctx)));
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("weight-zero multinomial product identity") {
    const AlgebraContext ctx(Q(0), 8);
    // over all ordered tuples of positive parts with sum <= 8
    std::vector<std::vector<int>> tuples;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int rest) -> void {
        if (!cur.empty()) tuples.push_back(cur);
        for (int p = 1; p <= rest; ++p) {
            cur.push_back(p);
            self(self, rest - p);
            cur.pop_back();
        }
    };
    rec(rec, 8);
    for (const auto& parts : tuples) {
        RBAElement prod = RBAElement::unit();
        int total = 0;
        for (int p : parts) {
            prod = element_mul(prod, RBAElement::from_word(TensorWord::single_variable(p), 1), ctx);
            total += p;
        }
        CHECK(prod == RBAElement::from_word(TensorWord::single_variable(total),
                                            Rat(multinomial(total, parts))));
    }
}

TEST_CASE("weight-zero permutation product identity") {
    for (int k = 1; k <= 4; ++k) {
        const AlgebraContext ctx(Q(0), k);
        RBAElement prod = RBAElement::unit();
        for (int i = 1; i <= k; ++i)
            prod = element_mul(prod, word_el({0, static_cast<uint32_t>(i)}), ctx);
        RBAElement want;
        std::vector<uint32_t> perm(static_cast<size_t>(k));
        for (int i = 0; i < k; ++i) perm[static_cast<size_t>(i)] = static_cast<uint32_t>(i + 1);
        do {
            want.add_term(TensorWord::from_tail(perm), Q(1));
        } while (std::next_permutation(perm.begin(), perm.end()));
        CHECK(prod == want);
    }
}

TEST_CASE("weight-zero distinct-parts identity") {
    const int M = 6;
    const AlgebraContext ctx(Q(0), M);
    RBAElement prod = RBAElement::unit();
    for (int n = 1; n <= M; ++n) {
        prod = element_mul(
            prod, element_add(RBAElement::unit(), word_el({0, static_cast<uint32_t>(n)})), ctx);
    }
    // sum over compositions with distinct parts
    RBAElement want = RBAElement::unit();
    std::vector<uint32_t> cur;
    auto rec = [&](auto&& self, int rest, uint32_t used_mask) -> void {
        for (uint32_t p = 1; static_cast<int>(p) <= rest; ++p) {
            if (used_mask & (uint32_t(1) << p)) continue;
            cur.push_back(p);
            want.add_term(TensorWord::from_tail(cur), Q(1));
            self(self, rest - static_cast<int>(p), used_mask | (uint32_t(1) << p));
            cur.pop_back();
        }
    };
    rec(rec, M, 0);
    // compare only words of total x-degree <= M
    auto filter = [&](const RBAElement& e) {
        RBAElement out;
        for (const auto& [w, c] : e.terms()) {
            uint32_t deg = 0;
            for (uint32_t x : w.exponents()) deg += x;
            if (static_cast<int>(deg) <= M) out.add_term(w, c);
        }
        return out;
    };
    CHECK(filter(prod) == filter(want));
}

TEST_CASE("serialization formats") {
    const AlgebraContext ctx(Q(1), 5);
    const RBAElement e = element_mul(RBAElement::one(1), RBAElement::one(1), ctx);
    CHECK(element_to_json(e) == "[{\"word\":[0,0],\"coeff\":\"1\"},{\"word\":[0,0,0],\"coeff\":\"2\"}]");
    CHECK(element_to_csv(e) == "word,coeff\n0 0,1\n0 0 0,2\n");
    CHECK(element_to_text(e) == "1*one(1) + 2*one(2)");
    CHECK(element_to_json(RBAElement()) == "[]");
    CHECK(element_to_text(RBAElement()) == "0");
    CHECK(element_to_text(el({{W({0, 1, 2}), Q(-1, 2)}})) == "-1/2*w(0,1,2)");
}

TEST_CASE("concurrent reads of shared immutable elements") {
    const AlgebraContext ctx(Q(2), 10);
    const RBAElement x = el({{W({0, 1}), Q(1)}, {TensorWord::one(2), Q(3, 2)}});
    const RBAElement y = el({{W({0, 2, 1}), Q(-2)}, {TensorWord::one(1), Q(1)}});
    const RBAElement expected = element_mul(x, y, ctx);
    std::vector<std::thread> threads;
    std::vector<RBAElement> results(4);
    for (int t = 0; t < 4; ++t) {
        threads.emplace_back([&, t] { results[static_cast<size_t>(t)] = element_mul(x, y, ctx); });
    }
    for (auto& th : threads) th.join();
    for (const auto& r : results) CHECK(r == expected);
}
