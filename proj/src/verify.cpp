#include "rba/verify.hpp"

#include <algorithm>
#include <bit>
#include <random>

#include "rba/comb.hpp"
#include "rba/egf.hpp"

namespace rba {

namespace {

const std::vector<Rat> kAxiomWeights = {Rat(0), Rat(1), Rat(2), Rat(5, 3)};
const std::vector<Rat> kSmallWeights = {Rat(0), Rat(1), Rat(2)};

RBAElement random_element(std::mt19937_64& rng) {
    RBAElement e;
    const int nterms = 1 + static_cast<int>(rng() % 3);
    for (int t = 0; t < nterms; ++t) {
        const int tail = static_cast<int>(rng() % 3);
        std::vector<uint32_t> exps(static_cast<size_t>(tail) + 1);
        for (auto& x : exps) x = static_cast<uint32_t>(rng() % 3);
        long num = static_cast<long>(rng() % 7) - 3;
        if (num == 0) num = 1;
        Rat c(num, static_cast<long>(rng() % 3) + 1);
        c.canonicalize();
        e.add_term(TensorWord(std::move(exps)), c);
    }
    return e;
}

IdentityReport check_rb_axiom(int trunc, uint64_t seed, int samples) {
    std::mt19937_64 rng(seed);
    bool ok = true;
    for (int s = 0; s < samples && ok; ++s) {
        const RBAElement x = random_element(rng);
        const RBAElement y = random_element(rng);
        const int loss_free = std::max(1, x.max_degree()) + std::max(1, y.max_degree()) + 2;
        for (const Rat& lambda : kAxiomWeights) {
            const AlgebraContext ctx(lambda, std::max(trunc, loss_free));
            const RBAElement px = rb_apply(x, ctx);
            const RBAElement py = rb_apply(y, ctx);
            const RBAElement lhs = element_mul(px, py, ctx);
            RBAElement rhs = rb_apply(element_mul(x, py, ctx), ctx);
            rhs = element_add(rhs, rb_apply(element_mul(px, y, ctx), ctx));
            rhs = element_add(rhs, element_scale(lambda, rb_apply(element_mul(x, y, ctx), ctx)));
            if (lhs != rhs) {
                ok = false;
                break;
            }
        }
    }
    return {"rb-axiom", trunc, ok, std::nullopt};
}

// All words of given tensor length with exponents <= emax.
std::vector<TensorWord> words_of_length(int len, uint32_t emax) {
    std::vector<TensorWord> out;
    std::vector<uint32_t> cur(static_cast<size_t>(len), 0);
    while (true) {
        out.push_back(TensorWord(cur));
        int i = len - 1;
        while (i >= 0 && cur[static_cast<size_t>(i)] == emax) cur[static_cast<size_t>(i--)] = 0;
        if (i < 0) break;
        ++cur[static_cast<size_t>(i)];
    }
    return out;
}

IdentityReport check_backend_equiv(int trunc) {
    std::vector<TensorWord> words;
    for (int len = 1; len <= 3; ++len) {
        for (auto& w : words_of_length(len, 3)) words.push_back(std::move(w));
    }
    bool ok = true;
    for (const Rat& lambda : kAxiomWeights) {
        for (const TensorWord& a : words) {
            for (const TensorWord& b : words) {
                if (static_cast<int>(a.exponents().size() + b.exponents().size()) > 4) continue;
                const AlgebraContext ctx(lambda, std::max(trunc, 4));
                if (word_product_recursive(a, b, ctx) != word_product_stuffle(a, b, ctx)) {
                    ok = false;
                }
            }
        }
    }
    return {"backend-equiv", trunc, ok, std::nullopt};
}

IdentityReport report_pair(const std::string& name, int trunc, const QSeries& sum,
                           const QSeries& prod) {
    IdentityReport r{name, trunc, true, std::nullopt};
    for (int e = 0; e <= trunc; ++e) {
        if (sum[e] != prod[e]) {
            r.equal = false;
            r.first_mismatch = e;
            break;
        }
    }
    return r;
}

// Brute-force side of the generalized product formula: coefficient of 1_n
// in the product of E_{lambda,f_i} as a sum over covering subset tuples.
Rat cover_sum_oracle(const std::vector<std::vector<Rat>>& fs, int n, const Rat& lambda) {
    const int k = static_cast<int>(fs.size());
    const uint32_t full = n == 0 ? 0 : (uint32_t(1) << n) - 1;
    Rat acc(0);
    std::vector<uint32_t> tuple(static_cast<size_t>(k));
    auto rec = [&](auto&& self, int pos, uint32_t covered, int sizes) -> void {
        if (pos == k) {
            if (covered != full) return;
            Rat term = rat_pow(lambda, static_cast<unsigned long>(sizes - n));
            for (int i = 0; i < k; ++i)
                term *= fs[static_cast<size_t>(i)][std::popcount(tuple[static_cast<size_t>(i)])];
            acc += term;
            return;
        }
        for (uint32_t s = 0;; ++s) {
            tuple[static_cast<size_t>(pos)] = s;
            self(self, pos + 1, covered | s, sizes + std::popcount(s));
            if (s == full) break;
        }
    };
    rec(rec, 0, 0, 0);
    return acc;
}

IdentityReport check_product_formula(int trunc, uint64_t seed) {
    const int nmax = std::min(trunc, 6);
    std::mt19937_64 rng(seed);
    IdentityReport r{"product-formula", trunc, true, std::nullopt};
    for (const Rat& lambda : kSmallWeights) {
        const AlgebraContext ctx(lambda, nmax);
        std::vector<LambdaEGF> pool = {LambdaEGF::ones(ctx), LambdaEGF::delta(ctx, 2)};
        std::vector<Rat> random_coeffs;
        for (int i = 0; i <= nmax; ++i)
            random_coeffs.push_back(Rat(static_cast<long>(rng() % 5) - 2));
        pool.push_back(LambdaEGF(ctx, random_coeffs));
        for (int k = 2; k <= 3 && r.equal; ++k) {
            std::vector<LambdaEGF> fs;
            std::vector<std::vector<Rat>> raw;
            for (int i = 0; i < k; ++i) {
                const auto& f = pool[static_cast<size_t>(i) % pool.size()];
                fs.push_back(f);
                raw.push_back(f.coeffs());
            }
            const LambdaEGF h = egf_kfold(fs);
            for (int n = 0; n <= nmax; ++n) {
                if (h.at(n) != cover_sum_oracle(raw, n, lambda)) {
                    r.equal = false;
                    r.first_mismatch = n;
                    break;
                }
            }
        }
    }
    return r;
}

Rat partition_sum_oracle(const std::vector<Rat>& f, const std::vector<Rat>& g, int n,
                         const Rat& lambda) {
    Rat acc(0);
    for_each_generalized_partition(n, std::nullopt, [&](const std::vector<uint32_t>& blocks) {
        int total = 0;
        Rat term(1);
        for (uint32_t b : blocks) {
            const int sz = std::popcount(b);
            total += sz;
            term *= f[static_cast<size_t>(sz)];
        }
        term *= g[blocks.size()];
        term *= rat_pow(lambda, static_cast<unsigned long>(total - n));
        acc += term;
    });
    return acc;
}

IdentityReport check_composition_formula(int trunc, uint64_t seed) {
    const int nmax = std::min(trunc, 6);
    std::mt19937_64 rng(seed);
    IdentityReport r{"composition-formula", trunc, true, std::nullopt};
    for (const Rat& lambda : kSmallWeights) {
        const AlgebraContext ctx(lambda, nmax);
        std::vector<std::pair<LambdaEGF, LambdaEGF>> cases;
        cases.emplace_back(LambdaEGF::ones(ctx), LambdaEGF::ones_from_1(ctx));
        std::vector<Rat> gr, fr;
        for (int i = 0; i <= nmax; ++i) {
            gr.push_back(Rat(static_cast<long>(rng() % 5) - 2));
            fr.push_back(i == 0 ? Rat(0) : Rat(static_cast<long>(rng() % 5) - 2));
        }
        cases.emplace_back(LambdaEGF(ctx, gr), LambdaEGF(ctx, fr));
        for (const auto& [g, f] : cases) {
            const LambdaEGF h = compose(g, f);
            if (h.at(0) != g.at(0)) {
                r.equal = false;
                r.first_mismatch = 0;
            }
            for (int n = 1; n <= nmax && r.equal; ++n) {
                if (h.at(n) != partition_sum_oracle(f.coeffs(), g.coeffs(), n, lambda)) {
                    r.equal = false;
                    r.first_mismatch = n;
                }
            }
        }
    }
    return r;
}

IdentityReport check_thm_nk(int trunc) {
    IdentityReport r{"thm-nk", trunc, true, std::nullopt};
    const int cap = std::min(trunc, 8);
    for (const Rat& lambda : kSmallWeights) {
        for (int k = 1; k <= cap; ++k) {
            for (int n = 1; k * n <= cap; ++n) {
                const AlgebraContext ctx(lambda, k * n);
                const RBAElement lhs =
                    element_pow(RBAElement::from_word(TensorWord::single_variable(k), 1), n, ctx);
                RBAElement rhs;
                for (const Composition& I : compositions_bounded(k * n, n)) {
                    const Rat c = Rat(restricted_type_count(n, k, I)) *
                                  rat_pow(lambda, static_cast<unsigned long>(k * n - I.length()));
                    std::vector<uint32_t> tail(I.parts.begin(), I.parts.end());
                    rhs.add_term(TensorWord::from_tail(tail), c);
                }
                if (lhs != rhs) {
                    r.equal = false;
                    r.first_mismatch = k * n;
                    return r;
                }
            }
        }
    }
    return r;
}

} // namespace

const std::vector<std::string>& verify_identity_names() {
    static const std::vector<std::string> names = {
        "rb-axiom",       "backend-equiv",       "qseries-phi",
        "qseries-psi",    "qseries-f",           "figurate-square",
        "figurate-triangular", "figurate-pentagonal", "thm-nk",
        "product-formula", "composition-formula"};
    return names;
}

IdentityReport verify_identity(const std::string& ident, int trunc, uint64_t seed, int samples) {
    if (trunc < 0) throw BadArguments("verify: trunc must be >= 0");
    if (ident == "rb-axiom") return check_rb_axiom(trunc, seed, samples);
    if (ident == "backend-equiv") return check_backend_equiv(trunc);
    if (ident == "qseries-phi") {
        const ThetaPair p = theta_phi(trunc);
        return report_pair("qseries-phi", trunc, p.sum, p.product);
    }
    if (ident == "qseries-psi") {
        const ThetaPair p = theta_psi(trunc);
        return report_pair("qseries-psi", trunc, p.sum, p.product);
    }
    if (ident == "qseries-f") {
        const ThetaPair p = euler_f(trunc);
        return report_pair("qseries-f", trunc, p.sum, p.product);
    }
    if (ident == "figurate-square") return figurate_identity_check(Figurate::Square, trunc);
    if (ident == "figurate-triangular") return figurate_identity_check(Figurate::Triangular, trunc);
    if (ident == "figurate-pentagonal") return figurate_identity_check(Figurate::Pentagonal, trunc);
    if (ident == "thm-nk") return check_thm_nk(trunc);
    if (ident == "product-formula") return check_product_formula(trunc, seed);
    if (ident == "composition-formula") return check_composition_formula(trunc, seed);
    throw BadArguments("verify: unknown identity '" + ident + "'");
}

} // namespace rba
