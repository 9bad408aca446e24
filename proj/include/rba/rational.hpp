#pragma once

#include <gmpxx.h>

#include <string>

#include "rba/errors.hpp"

namespace rba {

// Exact arithmetic everywhere: arbitrary-precision integers and rationals.
using Int = mpz_class;
using Rat = mpq_class;

// Parses "p", "-p" or "p/q" (q > 0 after canonicalization). Throws
// BadArguments on malformed input or a zero denominator.
Rat rat_from_string(const std::string& s);

// Canonical form: "p/q", with "/q" omitted when the denominator is 1.
std::string rat_to_string(const Rat& r);

// r^k for k >= 0.
Rat rat_pow(const Rat& r, unsigned long k);

} // namespace rba
