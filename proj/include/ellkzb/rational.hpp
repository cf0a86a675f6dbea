#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace ellkzb {

// Exact rational scalar. GMP keeps canonical form (lowest terms, positive
// denominator) provided canonicalize() runs after raw construction; every
// entry point below does.
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rat: zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

// Serialized as "p" or "p/q", q > 0.
inline std::string rat_str(const Rat& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline Rat rat_parse(const std::string& s) {
    Rat r;
    if (s.empty() || r.set_str(s, 10) != 0)
        throw std::invalid_argument("rat_parse: bad rational '" + s + "'");
    if (r.get_den() == 0) throw std::invalid_argument("rat_parse: zero denominator");
    r.canonicalize();
    return r;
}

inline Rat rat_factorial(unsigned long n) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return Rat(f);
}

inline Rat rat_binomial(unsigned long n, unsigned long k) {
    if (k > n) return Rat(0);
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), n, k);
    return Rat(b);
}

}  // namespace ellkzb
