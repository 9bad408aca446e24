#include "rba/egf.hpp"

#include "rba/comb.hpp"

namespace rba {

LambdaEGF::LambdaEGF(AlgebraContext ctx, std::vector<Rat> coeffs)
    : ctx_(std::move(ctx)), coeffs_(std::move(coeffs)) {
    coeffs_.resize(static_cast<size_t>(ctx_.trunc) + 1, Rat(0));
}

LambdaEGF LambdaEGF::zero(const AlgebraContext& ctx) {
    return LambdaEGF(ctx, {});
}

LambdaEGF LambdaEGF::ones(const AlgebraContext& ctx) {
    return LambdaEGF(ctx, std::vector<Rat>(static_cast<size_t>(ctx.trunc) + 1, Rat(1)));
}

LambdaEGF LambdaEGF::ones_from_1(const AlgebraContext& ctx) {
    std::vector<Rat> c(static_cast<size_t>(ctx.trunc) + 1, Rat(1));
    c[0] = 0;
    return LambdaEGF(ctx, std::move(c));
}

LambdaEGF LambdaEGF::delta(const AlgebraContext& ctx, int k) {
    if (k < 0) throw BadArguments("LambdaEGF::delta: k must be >= 0");
    std::vector<Rat> c(static_cast<size_t>(ctx.trunc) + 1, Rat(0));
    if (k <= ctx.trunc) c[static_cast<size_t>(k)] = 1;
    return LambdaEGF(ctx, std::move(c));
}

const Rat& LambdaEGF::at(int k) const {
    if (k < 0 || k > ctx_.trunc) throw BadArguments("LambdaEGF::at: index out of range");
    return coeffs_[static_cast<size_t>(k)];
}

RBAElement egf_to_element(const LambdaEGF& f) {
    RBAElement e;
    for (int k = 0; k <= f.context().trunc; ++k) e.add_term(TensorWord::one(k), f.at(k));
    return e;
}

LambdaEGF element_to_egf(const RBAElement& e, const AlgebraContext& ctx) {
    std::vector<Rat> coeffs(static_cast<size_t>(ctx.trunc) + 1, Rat(0));
    for (const auto& [w, c] : e.terms()) {
        if (!w.is_scalar()) throw NonScalarWord("element_to_egf: non-scalar word in element");
        if (w.degree() <= ctx.trunc) coeffs[static_cast<size_t>(w.degree())] = c;
    }
    return LambdaEGF(ctx, std::move(coeffs));
}

LambdaEGF egf_product(const LambdaEGF& f, const LambdaEGF& g) {
    if (!f.context().same_algebra(g.context()))
        throw ContextMismatch("egf_product: operands from different contexts");
    const AlgebraContext& ctx = f.context();
    std::vector<Rat> h(static_cast<size_t>(ctx.trunc) + 1, Rat(0));
    for (int u = 0; u <= ctx.trunc; ++u) {
        Rat acc(0);
        for (int u1 = 0; u1 <= u; ++u1) {
            const Rat lp = rat_pow(ctx.lambda, static_cast<unsigned long>(u1));
            if (lp == 0 && u1 > 0) continue;
            for (int u2 = 0; u1 + u2 <= u; ++u2) {
                const int u3 = u - u1 - u2;
                acc += lp * Rat(multinomial(u, {u1, u2, u3})) * f.at(u1 + u2) * g.at(u1 + u3);
            }
        }
        h[static_cast<size_t>(u)] = acc;
    }
    return LambdaEGF(ctx, std::move(h));
}

LambdaEGF egf_kfold(const std::vector<LambdaEGF>& fs) {
    if (fs.empty()) throw EmptyList("egf_kfold: needs at least one factor");
    LambdaEGF acc = fs.front();
    for (size_t i = 1; i < fs.size(); ++i) acc = egf_product(acc, fs[i]);
    return acc;
}

LambdaEGF divided_power(const LambdaEGF& f, int k) {
    if (k < 0) throw BadArguments("divided_power: k must be >= 0");
    if (f.at(0) != 0) throw NonzeroConstantTerm("divided_power: requires f(0) = 0");
    const AlgebraContext& ctx = f.context();
    const RBAElement d_ef = derive(egf_to_element(f), ctx);
    RBAElement cur = RBAElement::unit();
    for (int i = 1; i <= k; ++i) cur = rb_apply(element_mul(cur, d_ef, ctx), ctx);
    return element_to_egf(cur, ctx);
}

LambdaEGF compose(const LambdaEGF& g, const LambdaEGF& f) {
    if (!g.context().same_algebra(f.context()))
        throw ContextMismatch("compose: operands from different contexts");
    if (f.at(0) != 0) throw NonzeroConstantTerm("compose: requires f(0) = 0");
    const AlgebraContext& ctx = f.context();
    const RBAElement d_ef = derive(egf_to_element(f), ctx);
    // sum_k g(k) E^{[k]}; E^{[k]} sits in filtration >= k, so stopping the
    // sum at trunc is exact.
    RBAElement result = element_scale(g.at(0), RBAElement::unit());
    RBAElement cur = RBAElement::unit();
    for (int k = 1; k <= ctx.trunc; ++k) {
        cur = rb_apply(element_mul(cur, d_ef, ctx), ctx);
        if (cur.is_zero()) break;
        result = element_add(result, element_scale(g.at(k), cur));
    }
    return element_to_egf(result, ctx);
}

} // namespace rba
