#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "rba/errors.hpp"
#include "rba/rational.hpp"

namespace rba {

enum class Backend { Recursive, Stuffle };

// Weight lambda plus the filtration cap under which all operations run.
// Words of degree > trunc are dropped, never reported as errors.
struct AlgebraContext {
    Rat lambda;
    int trunc = 10;
    Backend backend = Backend::Recursive;

    AlgebraContext(Rat lambda_, int trunc_, Backend backend_ = Backend::Recursive)
        : lambda(std::move(lambda_)), trunc(trunc_), backend(backend_) {
        if (trunc < 0) throw BadArguments("AlgebraContext: trunc must be >= 0");
    }

    // Value compatibility for binary operations; the backend is a
    // computation strategy, not part of the algebra.
    bool same_algebra(const AlgebraContext& o) const {
        return lambda == o.lambda && trunc == o.trunc;
    }
};

// The pure tensor x^{e0} (x) x^{e1} (x) ... (x) x^{et}, stored as its
// exponent vector. The all-zero word of k+1 entries is the basis element
// 1_k; in particular (0) is the unit of the algebra. Filtration degree is
// the number of tensor factors minus one.
class TensorWord {
  public:
    TensorWord() : exps_{0} {}
    explicit TensorWord(std::vector<uint32_t> exps) : exps_(std::move(exps)) {
        if (exps_.empty()) throw BadArguments("TensorWord: needs at least one factor");
    }

    // 1_k: k+1 tensor factors, all equal to 1.
    static TensorWord one(int k);
    // 1 (x) x (x) ... (x) x with n copies of x; n = 0 gives the unit.
    static TensorWord single_variable(int n);
    // 1 (x) x^{i1} (x) ... (x) x^{it} for a composition tail (i1,...,it).
    static TensorWord from_tail(const std::vector<uint32_t>& tail);

    int degree() const { return static_cast<int>(exps_.size()) - 1; }
    bool is_scalar() const;  // all exponents zero, i.e. some 1_k
    const std::vector<uint32_t>& exponents() const { return exps_; }

    friend auto operator<=>(const TensorWord&, const TensorWord&) = default;

  private:
    std::vector<uint32_t> exps_;
};

// Sparse exact linear combination of tensor words in canonical form:
// terms sorted lexicographically by exponent vector, zero coefficients
// pruned eagerly. Equality is equality of term maps.
class RBAElement {
  public:
    using TermMap = std::map<TensorWord, Rat>;

    RBAElement() = default;  // zero
    static RBAElement unit() { return from_word(TensorWord(), 1); }
    static RBAElement from_word(const TensorWord& w, const Rat& c);
    static RBAElement one(int k, const Rat& c = 1) { return from_word(TensorWord::one(k), c); }

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    Rat coeff(const TensorWord& w) const;
    int max_degree() const;  // -1 for the zero element
    int min_degree() const;  // -1 for the zero element

    // Accumulates c * w, pruning on cancellation.
    void add_term(const TensorWord& w, const Rat& c);
    RBAElement truncated(int trunc) const;

    bool operator==(const RBAElement&) const = default;

  private:
    TermMap terms_;
};

// Mixable shuffle product of two words, by the quasi-shuffle recursion on
// the tails; leading factors multiply as monomials.
RBAElement word_product_recursive(const TensorWord& a, const TensorWord& b,
                                  const AlgebraContext& ctx);

// Same product, computed by enumerating stuffle pairs (phi, psi) with r
// overlaps weighted by lambda^r. Kept as an independent oracle backend.
RBAElement word_product_stuffle(const TensorWord& a, const TensorWord& b,
                                const AlgebraContext& ctx);

// Bilinear extension of the word product (backend from ctx).
RBAElement element_mul(const RBAElement& e1, const RBAElement& e2, const AlgebraContext& ctx);

RBAElement element_add(const RBAElement& e1, const RBAElement& e2);
RBAElement element_sub(const RBAElement& e1, const RBAElement& e2);
RBAElement element_scale(const Rat& c, const RBAElement& e);

// The Rota-Baxter operator: prepends a factor 1 to every word.
RBAElement rb_apply(const RBAElement& e, const AlgebraContext& ctx);

// The derivation 1_n -> 1_{n-1}, 1 -> 0. Defined only on the scalar
// subalgebra; throws NonScalarWord otherwise.
RBAElement derive(const RBAElement& e, const AlgebraContext& ctx);

// Closed form of 1_m * 1_n: sum_{k<=min(m,n)} lambda^k C(m+n-k,m) C(m,k) 1_{m+n-k}.
RBAElement one_mul_closed(int m, int n, const AlgebraContext& ctx);

RBAElement element_pow(const RBAElement& e, int n, const AlgebraContext& ctx);

// [e^0, e^1, ..., e^maxn].
std::vector<RBAElement> power_list(const RBAElement& e, int maxn, const AlgebraContext& ctx);

// sum_{k>=0} e^k, truncated. Requires lambda = 0 and min degree >= 1 so
// the Neumann series converges in the filtration topology.
RBAElement geometric_inverse(const RBAElement& e, const AlgebraContext& ctx);

// JSON array of {"word":[e0,...,et],"coeff":"p/q"}, sorted by word.
std::string element_to_json(const RBAElement& e);
// Human-readable form, e.g. "1/2*one(1) + 2*w(0,1,2)".
std::string element_to_text(const RBAElement& e);
// CSV with a "word,coeff" header; word as space-separated exponents.
std::string element_to_csv(const RBAElement& e);

} // namespace rba
