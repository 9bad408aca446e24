#include "rba/rational.hpp"

#include <cctype>

namespace rba {

Rat rat_from_string(const std::string& s) {
    if (s.empty()) throw BadArguments("rational: empty string");
    // Validate the shape before handing to GMP: optional sign, digits,
    // optional /digits.
    size_t i = 0;
    if (s[i] == '+' || s[i] == '-') ++i;
    size_t digits = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i, ++digits;
    if (digits == 0) throw BadArguments("rational: expected digits in '" + s + "'");
    if (i != s.size()) {
        if (s[i] != '/') throw BadArguments("rational: unexpected character in '" + s + "'");
        ++i;
        size_t den_digits = 0;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i, ++den_digits;
        if (den_digits == 0 || i != s.size())
            throw BadArguments("rational: malformed denominator in '" + s + "'");
    }
    Rat r(s);
    if (r.get_den() == 0) throw BadArguments("rational: zero denominator in '" + s + "'");
    r.canonicalize();
    return r;
}

std::string rat_to_string(const Rat& r) {
    return r.get_str();
}

Rat rat_pow(const Rat& r, unsigned long k) {
    Rat out;
    mpz_pow_ui(out.get_num_mpz_t(), r.get_num_mpz_t(), k);
    mpz_pow_ui(out.get_den_mpz_t(), r.get_den_mpz_t(), k);
    // r is canonical, so num^k / den^k already is.
    return out;
}

} // namespace rba
