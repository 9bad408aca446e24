#pragma once

#include <vector>

#include "rba/core.hpp"
#include "rba/errors.hpp"
#include "rba/rational.hpp"

namespace rba {

// A lambda-exponential generating function: the scalar element
// sum_k f(k) 1_k, stored densely as coeffs[k] for 0 <= k <= trunc.
class LambdaEGF {
  public:
    // coeffs may be shorter than trunc+1; missing entries are zero.
    LambdaEGF(AlgebraContext ctx, std::vector<Rat> coeffs);

    static LambdaEGF zero(const AlgebraContext& ctx);
    static LambdaEGF ones(const AlgebraContext& ctx);         // f(k) = 1
    static LambdaEGF ones_from_1(const AlgebraContext& ctx);  // f(0) = 0, f(k) = 1 for k >= 1
    static LambdaEGF delta(const AlgebraContext& ctx, int k); // f = delta_k

    const AlgebraContext& context() const { return ctx_; }
    const std::vector<Rat>& coeffs() const { return coeffs_; }
    const Rat& at(int k) const;  // BadArguments outside [0, trunc]

    bool operator==(const LambdaEGF& o) const {
        return ctx_.same_algebra(o.ctx_) && coeffs_ == o.coeffs_;
    }

  private:
    AlgebraContext ctx_;
    std::vector<Rat> coeffs_;
};

RBAElement egf_to_element(const LambdaEGF& f);
// Requires every word of e to be scalar (some 1_k); throws NonScalarWord.
LambdaEGF element_to_egf(const RBAElement& e, const AlgebraContext& ctx);

// Product convolution:
//   h(u) = sum_{u1+u2+u3=u} lambda^{u1} (u; u1,u2,u3) f(u1+u2) g(u1+u3).
LambdaEGF egf_product(const LambdaEGF& f, const LambdaEGF& g);

// Left fold of egf_product over a nonempty list.
LambdaEGF egf_kfold(const std::vector<LambdaEGF>& fs);

// k-th divided power E^{[k]}: E^{[0]} = 1, E^{[k]} = P(E^{[k-1]} * d(E_f)).
// Requires f(0) = 0.
LambdaEGF divided_power(const LambdaEGF& f, int k);

// Composition sum_k g(k) E^{[k]}; the k-sum stops at trunc, which is exact
// since E^{[k]} lies in filtration >= k. Requires f(0) = 0. The constant
// term of the result is g(0).
LambdaEGF compose(const LambdaEGF& g, const LambdaEGF& f);

} // namespace rba
