#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rba/core.hpp"
#include "rba/errors.hpp"
#include "rba/rational.hpp"

namespace rba {

// Truncated power series in q with exact rational coefficients,
// coeffs[e] for 0 <= e <= trunc.
class QSeries {
  public:
    explicit QSeries(int trunc);  // zero series; BadArguments if trunc < 0
    static QSeries one(int trunc);

    int trunc() const { return static_cast<int>(coeffs_.size()) - 1; }
    const Rat& operator[](int e) const { return coeffs_.at(e); }
    Rat& operator[](int e) { return coeffs_.at(e); }
    const std::vector<Rat>& coeffs() const { return coeffs_; }

    bool operator==(const QSeries&) const = default;

  private:
    std::vector<Rat> coeffs_;
};

QSeries qs_add(const QSeries& a, const QSeries& b);  // TruncMismatch
QSeries qs_mul(const QSeries& a, const QSeries& b);  // truncated Cauchy product
// The polynomial 1 - c q^e as a series truncated at `trunc`; e >= 1.
QSeries qs_one_minus_term(const Rat& c, int e, int trunc);
// Reciprocal by the triangular recurrence; requires constant term 1.
QSeries qs_inverse(const QSeries& a);

// A theta/Euler identity with both sides materialized.
struct ThetaPair {
    QSeries sum;
    QSeries product;
};

// phi(q)   = sum_{n in Z} q^{n^2}            = (-q;q^2)_inf^2 (q^2;q^2)_inf
// psi(q)   = sum_{n>=0} q^{C(n+1,2)}         = (q^2;q^2)_inf / (q;q^2)_inf
// f(-q)    = sum_{n in Z} (-1)^n q^{n(3n-1)/2} = (q;q)_inf
ThetaPair theta_phi(int trunc);
ThetaPair theta_psi(int trunc);
ThetaPair euler_f(int trunc);

enum class Figurate { Square, Triangular, Pentagonal };

struct IdentityReport {
    std::string identity;
    int trunc = 0;
    bool equal = false;
    std::optional<int> first_mismatch;  // q-exponent / filtration degree

    std::string to_json() const;
};

// Verifies the factorial-figurate identities inside the weight-zero
// algebra at filtration cap N: the explicit sum side against the truncated
// product of factors (1 +/- m! (1 (x) x^{(x)m})).
IdentityReport figurate_identity_check(Figurate kind, int N);

// The algebra map q |-> 1 (x) x at weight zero:
// sum a_e q^e |-> sum a_e e! (1 (x) x^{(x)e}).
RBAElement qseries_to_rba(const QSeries& s, const AlgebraContext& ctx);

} // namespace rba
