#include "rba/qseries.hpp"

#include <sstream>

#include "rba/comb.hpp"

namespace rba {

QSeries::QSeries(int trunc) {
    if (trunc < 0) throw BadArguments("QSeries: trunc must be >= 0");
    coeffs_.assign(static_cast<size_t>(trunc) + 1, Rat(0));
}

QSeries QSeries::one(int trunc) {
    QSeries s(trunc);
    s[0] = 1;
    return s;
}

QSeries qs_add(const QSeries& a, const QSeries& b) {
    if (a.trunc() != b.trunc()) throw TruncMismatch("qs_add: different truncations");
    QSeries out(a.trunc());
    for (int e = 0; e <= a.trunc(); ++e) out[e] = a[e] + b[e];
    return out;
}

QSeries qs_mul(const QSeries& a, const QSeries& b) {
    if (a.trunc() != b.trunc()) throw TruncMismatch("qs_mul: different truncations");
    QSeries out(a.trunc());
    for (int i = 0; i <= a.trunc(); ++i) {
        if (a[i] == 0) continue;
        for (int j = 0; i + j <= a.trunc(); ++j) {
            if (b[j] == 0) continue;
            out[i + j] += a[i] * b[j];
        }
    }
    return out;
}

QSeries qs_one_minus_term(const Rat& c, int e, int trunc) {
    if (e < 1) throw BadArguments("qs_one_minus_term: exponent must be >= 1");
    QSeries out = QSeries::one(trunc);
    if (e <= trunc) out[e] = -c;
    return out;
}

QSeries qs_inverse(const QSeries& a) {
    if (a[0] != 1) throw BadArguments("qs_inverse: constant term must be 1");
    QSeries out(a.trunc());
    out[0] = 1;
    for (int n = 1; n <= a.trunc(); ++n) {
        Rat acc(0);
        for (int k = 1; k <= n; ++k) acc += a[k] * out[n - k];
        out[n] = -acc;
    }
    return out;
}

ThetaPair theta_phi(int trunc) {
    QSeries sum(trunc);
    sum[0] = 1;
    for (int n = 1; n * n <= trunc; ++n) sum[n * n] += 2;  // n and -n

    QSeries prod = QSeries::one(trunc);
    for (int n = 1; 2 * n - 1 <= trunc; ++n) {
        const QSeries f = qs_one_minus_term(Rat(-1), 2 * n - 1, trunc);  // 1 + q^{2n-1}
        prod = qs_mul(prod, qs_mul(f, f));
    }
    for (int n = 1; 2 * n <= trunc; ++n) prod = qs_mul(prod, qs_one_minus_term(Rat(1), 2 * n, trunc));
    return {sum, prod};
}

ThetaPair theta_psi(int trunc) {
    QSeries sum(trunc);
    for (int n = 0; n * (n + 1) / 2 <= trunc; ++n) sum[n * (n + 1) / 2] += 1;

    QSeries num = QSeries::one(trunc);
    for (int n = 1; 2 * n <= trunc; ++n) num = qs_mul(num, qs_one_minus_term(Rat(1), 2 * n, trunc));
    QSeries den = QSeries::one(trunc);
    for (int n = 1; 2 * n - 1 <= trunc; ++n)
        den = qs_mul(den, qs_one_minus_term(Rat(1), 2 * n - 1, trunc));
    return {sum, qs_mul(num, qs_inverse(den))};
}

ThetaPair euler_f(int trunc) {
    QSeries sum(trunc);
    // n(3n-1)/2 over all integers n; negative n contributes sign (-1)^n too.
    for (int n = 0;; ++n) {
        const long e = static_cast<long>(n) * (3L * n - 1) / 2;
        if (e > trunc) break;
        sum[static_cast<int>(e)] += (n % 2 == 0) ? 1 : -1;
    }
    for (int n = 1;; ++n) {
        const long e = static_cast<long>(n) * (3L * n + 1) / 2;
        if (e > trunc) break;
        sum[static_cast<int>(e)] += (n % 2 == 0) ? 1 : -1;
    }

    QSeries prod = QSeries::one(trunc);
    for (int n = 1; n <= trunc; ++n) prod = qs_mul(prod, qs_one_minus_term(Rat(1), n, trunc));
    return {sum, prod};
}

std::string IdentityReport::to_json() const {
    std::ostringstream os;
    os << "{\"identity\":\"" << identity << "\",\"trunc\":" << trunc << ",\"equal\":"
       << (equal ? "true" : "false") << ",\"first_mismatch\":";
    if (first_mismatch) {
        os << *first_mismatch;
    } else {
        os << "null";
    }
    os << '}';
    return os.str();
}

namespace {

// c * (1 (x) x^{(x)m})
RBAElement var_term(const Rat& c, int m) {
    return RBAElement::from_word(TensorWord::single_variable(m), c);
}

RBAElement unit_plus(const Rat& c, int m, const AlgebraContext& ctx) {
    RBAElement e = RBAElement::unit();
    if (m <= ctx.trunc) e.add_term(TensorWord::single_variable(m), c);
    return e;
}

std::optional<int> first_differing_degree(const RBAElement& a, const RBAElement& b) {
    auto ia = a.terms().begin();
    auto ib = b.terms().begin();
    while (ia != a.terms().end() || ib != b.terms().end()) {
        if (ia == a.terms().end()) return ib->first.degree();
        if (ib == b.terms().end()) return ia->first.degree();
        if (ia->first < ib->first) return ia->first.degree();
        if (ib->first < ia->first) return ib->first.degree();
        if (ia->second != ib->second) return ia->first.degree();
        ++ia, ++ib;
    }
    return std::nullopt;
}

} // namespace

IdentityReport figurate_identity_check(Figurate kind, int N) {
    const AlgebraContext ctx(Rat(0), N);
    RBAElement lhs;
    RBAElement rhs = RBAElement::unit();
    std::string name;

    switch (kind) {
        case Figurate::Square: {
            name = "figurate-square";
            lhs = RBAElement::unit();  // n = 0
            for (int n = 1; n * n <= N; ++n)
                lhs = element_add(lhs, var_term(Rat(2) * Rat(factorial(n * n)), n * n));
            for (int n = 1; 2 * n - 1 <= N; ++n) {
                const RBAElement f = unit_plus(Rat(factorial(2 * n - 1)), 2 * n - 1, ctx);
                rhs = element_mul(rhs, element_mul(f, f, ctx), ctx);
            }
            for (int n = 1; 2 * n <= N; ++n)
                rhs = element_mul(rhs, unit_plus(-Rat(factorial(2 * n)), 2 * n, ctx), ctx);
            break;
        }
        case Figurate::Triangular: {
            name = "figurate-triangular";
            for (int n = 0; n * (n + 1) / 2 <= N; ++n) {
                const int t = n * (n + 1) / 2;
                lhs = element_add(lhs, var_term(Rat(factorial(t)), t));
            }
            for (int n = 1; 2 * n <= N; ++n)
                rhs = element_mul(rhs, unit_plus(-Rat(factorial(2 * n)), 2 * n, ctx), ctx);
            for (int n = 1; 2 * n - 1 <= N; ++n) {
                // 1 / (1 - (2n-1)! (1 (x) x^{(x)(2n-1)}))
                const RBAElement inv =
                    geometric_inverse(var_term(Rat(factorial(2 * n - 1)), 2 * n - 1), ctx);
                rhs = element_mul(rhs, inv, ctx);
            }
            break;
        }
        case Figurate::Pentagonal: {
            name = "figurate-pentagonal";
            for (int n = 0;; ++n) {
                const long e = static_cast<long>(n) * (3L * n - 1) / 2;
                if (e > N) break;
                const Rat sign = (n % 2 == 0) ? 1 : -1;
                lhs = element_add(lhs, var_term(sign * Rat(factorial(static_cast<int>(e))),
                                                static_cast<int>(e)));
            }
            for (int n = 1;; ++n) {
                const long e = static_cast<long>(n) * (3L * n + 1) / 2;
                if (e > N) break;
                const Rat sign = (n % 2 == 0) ? 1 : -1;
                lhs = element_add(lhs, var_term(sign * Rat(factorial(static_cast<int>(e))),
                                                static_cast<int>(e)));
            }
            for (int m = 1; m <= N; ++m)
                rhs = element_mul(rhs, unit_plus(-Rat(factorial(m)), m, ctx), ctx);
            break;
        }
    }

    IdentityReport report;
    report.identity = name;
    report.trunc = N;
    report.first_mismatch = first_differing_degree(lhs, rhs);
    report.equal = !report.first_mismatch.has_value();
    return report;
}

RBAElement qseries_to_rba(const QSeries& s, const AlgebraContext& ctx) {
    if (ctx.lambda != 0) throw NonzeroWeight("qseries_to_rba: requires weight 0");
    if (ctx.trunc < s.trunc()) throw BadArguments("qseries_to_rba: ctx.trunc < series trunc");
    RBAElement out;
    for (int e = 0; e <= s.trunc(); ++e) {
        if (s[e] == 0) continue;
        out.add_term(TensorWord::single_variable(e), s[e] * Rat(factorial(e)));
    }
    return out;
}

} // namespace rba
