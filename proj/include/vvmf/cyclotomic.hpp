#pragma once
// Exact arithmetic in cyclotomic fields Q(zeta_M).
//
// An element is stored as a sparse rational combination of canonical basis
// roots.  The canonical basis is the tensor product of power bases of the
// prime-power subfields: writing M = prod p^e, the exponent j of zeta_M^j is
// admissible iff each CRT digit of j in Z/p^e is < phi(p^e).  Every root
// reduces to this basis through the prime-power relations
//   zeta^{(p-1)p^{e-1}+s} = -(zeta^{s} + zeta^{p^{e-1}+s} + ... ),
// which is the reduction modulo the p^e-th cyclotomic polynomial.  The
// representation is unique, so equality is coefficient-map equality.
//
// Mixed-modulus arithmetic lifts both operands to Q(zeta_lcm) first, so
// callers never have to pick a working modulus in advance.

#include <gmpxx.h>

#include <complex>
#include <map>
#include <string>
#include <vector>

#include "vvmf/rat.hpp"

namespace vvmf {

class Cyclo {
public:
    Cyclo() : m_(1) {}                       // zero
    explicit Cyclo(const mpq_class& r);      // rational constant
    explicit Cyclo(long n) : Cyclo(mpq_class(n)) {}

    // zeta_M^j, any integer j (reduced mod M, then to the canonical basis).
    static Cyclo root_of_unity(long M, long j);
    // e(t) = exp(2*pi*i*t) for rational t.
    static Cyclo unit_phase(const mpq_class& t);

    long modulus() const { return m_; }
    bool is_zero() const { return c_.empty(); }
    bool is_rational() const;
    // Throws std::domain_error when the value is not rational.
    mpq_class rational_value() const;

    // Image in Q(zeta_M2); requires modulus() | M2.
    Cyclo lifted(long M2) const;

    Cyclo operator-() const;
    Cyclo operator+(const Cyclo& o) const;
    Cyclo operator-(const Cyclo& o) const;
    Cyclo operator*(const Cyclo& o) const;
    Cyclo operator*(const mpq_class& s) const;
    Cyclo operator/(const Cyclo& o) const { return *this * o.inverse(); }
    Cyclo& operator+=(const Cyclo& o) { *this = *this + o; return *this; }
    Cyclo& operator*=(const Cyclo& o) { *this = *this * o; return *this; }

    // Complex conjugation zeta_M -> zeta_M^{M-1}.
    Cyclo conjugate() const;
    // Exact inverse.  Uses z*conj(z) when that is rational (the common case
    // for roots and Gauss sums), otherwise the full product of Galois
    // conjugates.  Throws std::domain_error on zero.
    Cyclo inverse() const;

    bool operator==(const Cyclo& o) const;
    bool operator!=(const Cyclo& o) const { return !(*this == o); }

    std::complex<double> embed() const;      // zeta_M -> exp(2*pi*i/M)
    std::string str() const;                 // deterministic rendering

    // Dense coordinates over 1, zeta_M, ..., zeta_M^{phi(M)-1} (the power
    // basis reduced modulo the M-th cyclotomic polynomial).  Intended for
    // small moduli (export/debug); guarded against large M.
    std::vector<mpq_class> power_basis_coeffs() const;

    // Canonical sparse terms: exponent -> coefficient (tests, serialization).
    const std::map<long, mpq_class>& terms() const { return c_; }

private:
    long m_;                                 // root order M
    std::map<long, mpq_class> c_;            // canonical-basis exponent -> coeff

    friend struct CycloOps;
};

// Euler phi of M (used by tests and the dense export).
long euler_phi(long M);

// sqrt(n) for a positive integer n, written exactly as a cyclotomic number
// (lives in Q(zeta_{4n})); used by the signature self-test.
Cyclo cyclo_sqrt(const mpz_class& n);

}  // namespace vvmf
