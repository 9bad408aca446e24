#include "rba/core.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

#include "rba/comb.hpp"

namespace rba {

TensorWord TensorWord::one(int k) {
    if (k < 0) throw BadArguments("TensorWord::one: k must be >= 0");
    return TensorWord(std::vector<uint32_t>(static_cast<size_t>(k) + 1, 0));
}

TensorWord TensorWord::single_variable(int n) {
    if (n < 0) throw BadArguments("TensorWord::single_variable: n must be >= 0");
    std::vector<uint32_t> exps(static_cast<size_t>(n) + 1, 1);
    exps[0] = 0;
    return TensorWord(std::move(exps));
}

TensorWord TensorWord::from_tail(const std::vector<uint32_t>& tail) {
    std::vector<uint32_t> exps;
    exps.reserve(tail.size() + 1);
    exps.push_back(0);
    exps.insert(exps.end(), tail.begin(), tail.end());
    return TensorWord(std::move(exps));
}

bool TensorWord::is_scalar() const {
    return std::all_of(exps_.begin(), exps_.end(), [](uint32_t e) { return e == 0; });
}

RBAElement RBAElement::from_word(const TensorWord& w, const Rat& c) {
    RBAElement e;
    e.add_term(w, c);
    return e;
}

Rat RBAElement::coeff(const TensorWord& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? Rat(0) : it->second;
}

int RBAElement::max_degree() const {
    return terms_.empty() ? -1 : terms_.rbegin()->first.degree();
}

int RBAElement::min_degree() const {
    int d = -1;
    for (const auto& [w, c] : terms_) {
        if (d < 0 || w.degree() < d) d = w.degree();
    }
    return d;
}

void RBAElement::add_term(const TensorWord& w, const Rat& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(w, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

RBAElement RBAElement::truncated(int trunc) const {
    RBAElement out;
    for (const auto& [w, c] : terms_) {
        if (w.degree() <= trunc) out.terms_.emplace(w, c);
    }
    return out;
}

namespace {

using Tail = std::vector<uint32_t>;
using TailSum = std::map<Tail, Rat>;

// Quasi-shuffle of the two word tails, as a suffix-indexed DP. State (i,j)
// holds the stuffle of a[i:] and b[j:]; identical subwords coalesce per
// state, so repeated letters cost polynomial instead of C(m+n,m) paths.
// A word w in state (i,j) gains at least max(i,j) more letters on the way
// back to the root, which gives the truncation prune.
class QuasiShuffle {
  public:
    QuasiShuffle(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b,
                 const AlgebraContext& ctx)
        : a_(a), b_(b), m_(a.size() - 1), n_(b.size() - 1), lambda_(ctx.lambda),
          trunc_(ctx.trunc), memo_((m_ + 1) * (n_ + 1)) {}

    const TailSum& run() { return state(0, 0); }

  private:
    const TailSum& state(size_t i, size_t j) {
        auto& slot = memo_[i * (n_ + 1) + j];
        if (slot) return *slot;

        TailSum out;
        const size_t floor = std::max(i, j);  // prepends still owed above this state
        auto keep = [&](const Tail& w) { return w.size() + floor <= static_cast<size_t>(trunc_); };

        if (i == m_ && j == n_) {
            out.emplace(Tail{}, Rat(1));
        } else if (i == m_) {
            Tail rest(b_.begin() + 1 + j, b_.end());
            if (keep(rest)) out.emplace(std::move(rest), Rat(1));
        } else if (j == n_) {
            Tail rest(a_.begin() + 1 + i, a_.end());
            if (keep(rest)) out.emplace(std::move(rest), Rat(1));
        } else {
            auto extend = [&](const TailSum& child, uint32_t letter, const Rat& weight) {
                if (weight == 0) return;
                for (const auto& [w, c] : child) {
                    Tail ext;
                    ext.reserve(w.size() + 1);
                    ext.push_back(letter);
                    ext.insert(ext.end(), w.begin(), w.end());
                    if (!keep(ext)) continue;
                    auto [it, inserted] = out.emplace(std::move(ext), c * weight);
                    if (!inserted) it->second += c * weight;
                }
            };
            const uint32_t x = a_[1 + i];
            const uint32_t y = b_[1 + j];
            extend(state(i + 1, j), x, Rat(1));
            extend(state(i, j + 1), y, Rat(1));
            extend(state(i + 1, j + 1), x + y, lambda_);
        }

        slot = std::move(out);
        return *slot;
    }

    const std::vector<uint32_t>& a_;
    const std::vector<uint32_t>& b_;
    size_t m_, n_;  // tail lengths
    Rat lambda_;
    int trunc_;
    std::vector<std::optional<TailSum>> memo_;
};

} // namespace

RBAElement word_product_recursive(const TensorWord& a, const TensorWord& b,
                                  const AlgebraContext& ctx) {
    RBAElement out;
    const uint32_t lead = a.exponents()[0] + b.exponents()[0];
    QuasiShuffle qs(a.exponents(), b.exponents(), ctx);
    for (const auto& [tail, c] : qs.run()) {
        if (static_cast<int>(tail.size()) > ctx.trunc) continue;
        Tail word;
        word.reserve(tail.size() + 1);
        word.push_back(lead);
        word.insert(word.end(), tail.begin(), tail.end());
        out.add_term(TensorWord(std::move(word)), c);
    }
    return out;
}

RBAElement word_product_stuffle(const TensorWord& a, const TensorWord& b,
                                const AlgebraContext& ctx) {
    const auto& ae = a.exponents();
    const auto& be = b.exponents();
    const int m = a.degree();
    const int n = b.degree();
    const uint32_t lead = ae[0] + be[0];

    RBAElement out;
    for (int r = 0; r <= std::min(m, n); ++r) {
        const int t = m + n - r;
        if (t > ctx.trunc) continue;  // dropped by truncation
        if (t > 62) throw SizeLimit("word_product_stuffle: words too long to enumerate");
        const Rat weight = rat_pow(ctx.lambda, static_cast<unsigned long>(r));
        if (weight == 0 && r > 0) continue;

        // phi images: all m-subsets of [t].
        std::vector<int> phi(m);
        for (int i = 0; i < m; ++i) phi[i] = i;
        auto next_combination = [](std::vector<int>& idx, int limit) {
            int k = static_cast<int>(idx.size());
            for (int i = k - 1; i >= 0; --i) {
                if (idx[i] < limit - (k - i)) {
                    ++idx[i];
                    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
                    return true;
                }
            }
            return false;
        };

        bool more = true;
        while (more) {
            uint64_t phi_mask = 0;
            for (int p : phi) phi_mask |= uint64_t(1) << p;
            // psi must contain the complement and r extra positions from phi.
            std::vector<int> phi_pos(phi.begin(), phi.end());
            std::vector<int> overlap(r);
            for (int i = 0; i < r; ++i) overlap[i] = i;
            bool more_overlap = true;
            while (more_overlap) {
                uint64_t psi_mask = (~phi_mask) & ((t == 64 ? ~uint64_t(0) : (uint64_t(1) << t) - 1));
                for (int o : overlap) psi_mask |= uint64_t(1) << phi_pos[o];

                Tail word(static_cast<size_t>(t) + 1, 0);
                word[0] = lead;
                int ai = 0, bi = 0;
                for (int p = 0; p < t; ++p) {
                    uint32_t e = 0;
                    if (phi_mask & (uint64_t(1) << p)) e += ae[1 + ai++];
                    if (psi_mask & (uint64_t(1) << p)) e += be[1 + bi++];
                    word[1 + p] = e;
                }
                out.add_term(TensorWord(std::move(word)), weight);

                more_overlap = r > 0 && next_combination(overlap, m);
            }
            more = m > 0 && next_combination(phi, t);
        }
    }
    return out;
}

RBAElement element_mul(const RBAElement& e1, const RBAElement& e2, const AlgebraContext& ctx) {
    RBAElement out;
    for (const auto& [w1, c1] : e1.terms()) {
        for (const auto& [w2, c2] : e2.terms()) {
            const RBAElement wp = ctx.backend == Backend::Recursive
                                      ? word_product_recursive(w1, w2, ctx)
                                      : word_product_stuffle(w1, w2, ctx);
            const Rat c = c1 * c2;
            for (const auto& [w, wc] : wp.terms()) out.add_term(w, c * wc);
        }
    }
    return out;
}

RBAElement element_add(const RBAElement& e1, const RBAElement& e2) {
    RBAElement out = e1;
    for (const auto& [w, c] : e2.terms()) out.add_term(w, c);
    return out;
}

RBAElement element_sub(const RBAElement& e1, const RBAElement& e2) {
    RBAElement out = e1;
    for (const auto& [w, c] : e2.terms()) out.add_term(w, -c);
    return out;
}

RBAElement element_scale(const Rat& c, const RBAElement& e) {
    RBAElement out;
    if (c == 0) return out;
    for (const auto& [w, wc] : e.terms()) out.add_term(w, c * wc);
    return out;
}

RBAElement rb_apply(const RBAElement& e, const AlgebraContext& ctx) {
    RBAElement out;
    for (const auto& [w, c] : e.terms()) {
        if (w.degree() + 1 > ctx.trunc) continue;
        Tail exps;
        exps.reserve(w.exponents().size() + 1);
        exps.push_back(0);
        exps.insert(exps.end(), w.exponents().begin(), w.exponents().end());
        out.add_term(TensorWord(std::move(exps)), c);
    }
    return out;
}

RBAElement derive(const RBAElement& e, const AlgebraContext&) {
    RBAElement out;
    for (const auto& [w, c] : e.terms()) {
        if (!w.is_scalar())
            throw NonScalarWord("derive: defined only on the scalar subalgebra, got " +
                                element_to_text(RBAElement::from_word(w, 1)));
        if (w.degree() == 0) continue;  // d(1) = 0
        out.add_term(TensorWord::one(w.degree() - 1), c);
    }
    return out;
}

RBAElement one_mul_closed(int m, int n, const AlgebraContext& ctx) {
    if (m < 0 || n < 0) throw BadArguments("one_mul_closed: m, n must be >= 0");
    RBAElement out;
    for (int k = 0; k <= std::min(m, n); ++k) {
        if (m + n - k > ctx.trunc) continue;
        Rat c = rat_pow(ctx.lambda, static_cast<unsigned long>(k));
        c *= Rat(binomial(m + n - k, m) * binomial(m, k));
        out.add_term(TensorWord::one(m + n - k), c);
    }
    return out;
}

RBAElement element_pow(const RBAElement& e, int n, const AlgebraContext& ctx) {
    if (n < 0) throw BadArguments("element_pow: exponent must be >= 0");
    RBAElement acc = RBAElement::unit();
    for (int i = 0; i < n; ++i) acc = element_mul(acc, e, ctx);
    return acc;
}

std::vector<RBAElement> power_list(const RBAElement& e, int maxn, const AlgebraContext& ctx) {
    if (maxn < 0) throw BadArguments("power_list: maxn must be >= 0");
    std::vector<RBAElement> out;
    out.reserve(static_cast<size_t>(maxn) + 1);
    out.push_back(RBAElement::unit());
    for (int i = 1; i <= maxn; ++i) out.push_back(element_mul(out.back(), e, ctx));
    return out;
}

RBAElement geometric_inverse(const RBAElement& e, const AlgebraContext& ctx) {
    if (ctx.lambda != 0)
        throw NonzeroWeight("geometric_inverse: requires weight 0");
    if (!e.is_zero() && e.min_degree() < 1)
        throw NonPositiveDegree("geometric_inverse: element has a degree-0 term");
    RBAElement acc = RBAElement::unit();
    RBAElement pw = RBAElement::unit();
    for (int k = 1; k <= ctx.trunc; ++k) {
        pw = element_mul(pw, e, ctx);
        if (pw.is_zero()) break;
        acc = element_add(acc, pw);
    }
    return acc;
}

std::string element_to_json(const RBAElement& e) {
    std::ostringstream os;
    os << '[';
    bool first = true;
    for (const auto& [w, c] : e.terms()) {
        if (!first) os << ',';
        first = false;
        os << "{\"word\":[";
        for (size_t i = 0; i < w.exponents().size(); ++i) {
            if (i) os << ',';
            os << w.exponents()[i];
        }
        os << "],\"coeff\":\"" << rat_to_string(c) << "\"}";
    }
    os << ']';
    return os.str();
}

std::string element_to_text(const RBAElement& e) {
    if (e.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [w, c] : e.terms()) {
        if (!first) os << " + ";
        first = false;
        os << rat_to_string(c) << '*';
        if (w.is_scalar()) {
            os << "one(" << w.degree() << ')';
        } else {
            os << "w(";
            for (size_t i = 0; i < w.exponents().size(); ++i) {
                if (i) os << ',';
                os << w.exponents()[i];
            }
            os << ')';
        }
    }
    return os.str();
}

std::string element_to_csv(const RBAElement& e) {
    std::ostringstream os;
    os << "word,coeff\n";
    for (const auto& [w, c] : e.terms()) {
        for (size_t i = 0; i < w.exponents().size(); ++i) {
            if (i) os << ' ';
            os << w.exponents()[i];
        }
        os << ',' << rat_to_string(c) << '\n';
    }
    return os.str();
}

} // namespace rba
