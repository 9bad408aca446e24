#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rba/qseries.hpp"

namespace rba {

// Identity suites runnable from the CLI. Each name maps to one
// module-level invariant:
//   rb-axiom             P(x)P(y) = P(xP(y)) + P(P(x)y) + lambda P(xy) on
//                        seeded random elements, loss-free truncation
//   backend-equiv        recursive vs stuffle product on all word pairs of
//                        total length <= 4, exponents <= 3, 4 weights
//   qseries-phi/psi/f    theta/Euler sum side = product side to order N
//   figurate-*           the three factorial identities at weight 0
//   thm-nk               (1 (x) x^{(x)k})^n vs restricted-partition sum
//   product-formula      k-fold EGF product vs subset-cover sum
//   composition-formula  compose vs generalized-partition sum
const std::vector<std::string>& verify_identity_names();

IdentityReport verify_identity(const std::string& ident, int trunc,
                               uint64_t seed = 20120809, int samples = 500);

} // namespace rba
