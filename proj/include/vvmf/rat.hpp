#pragma once
// Small exact-rational helpers shared across the library.

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace vvmf {

// gmpxx does not canonicalize fractions built from (num, den); this does.
inline mpq_class make_rat(const mpz_class& num, const mpz_class& den) {
    if (den == 0) throw std::domain_error("make_rat: zero denominator");
    mpq_class q(num, den);
    q.canonicalize();
    return q;
}

inline mpq_class make_rat(long num, long den) {
    return make_rat(mpz_class(num), mpz_class(den));
}

// Parses "p/q" or "p".  Throws std::domain_error on malformed input.
inline mpq_class parse_rat(const std::string& s) {
    mpq_class q;
    if (s.empty() || q.set_str(s, 10) != 0)
        throw std::domain_error("parse_rat: malformed rational '" + s + "'");
    if (q.get_den() == 0)
        throw std::domain_error("parse_rat: zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
}

inline std::string rat_str(const mpq_class& q) { return q.get_str(); }

// Representative of q modulo 1 lying in [0, 1).
inline mpq_class mod1(const mpq_class& q) {
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return q - mpq_class(fl);
}

inline double to_double(const mpq_class& q) { return q.get_d(); }

inline long lcm_long(long a, long b) {
    mpz_class r;
    mpz_lcm(r.get_mpz_t(), mpz_class(a).get_mpz_t(), mpz_class(b).get_mpz_t());
    if (!r.fits_slong_p()) throw std::overflow_error("lcm_long: overflow");
    return r.get_si();
}

}  // namespace vvmf
