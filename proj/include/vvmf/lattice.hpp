#pragma once
// Even integral lattices and their discriminant forms L'/L.
//
// A lattice is given by its Gram matrix.  The discriminant group is read off
// the Smith normal form U*gram*V = D: the elementary divisors d_i > 1 are the
// component orders, and the corresponding generators are V.col(i)/d_i as
// rational vectors in the dual.  The quadratic form q and the bilinear form
// descend to Q/Z values on generators, which is all the downstream
// representation theory needs.

#include <gmpxx.h>

#include <string>
#include <vector>

#include "vvmf/cyclotomic.hpp"
#include "vvmf/intmat.hpp"

namespace vvmf {

struct Lattice {
    ZMat gram;
    long rank = 0;
    long sig_pos = 0, sig_neg = 0;
    // True when the signature is (2, l) with l >= 3, the shape required by
    // the Eisenstein / congruence pipeline (not by the representation layer).
    bool pipeline_shape = false;
};

// Element of L'/L in canonical coordinates: coords[i] in [0, d_i).
struct DfElement {
    std::vector<long> coords;
    bool operator==(const DfElement& o) const { return coords == o.coords; }
};

struct DiscriminantForm {
    std::vector<long> orders;  // elementary divisors > 1, ascending, d_i | d_{i+1}
    // k x k rational table (k = orders.size()): diagonal entries are q(g_i)
    // mod 1, off-diagonal entries are (g_i, g_j) mod 1.
    QMat q_gram;
    long level = 1;    // smallest N with N*q(a) integral for all a
    mpz_class size{1}; // |L'/L| = prod d_i
};

// Validates symmetry, even diagonal and nondegeneracy; computes the inertia.
// Throws std::domain_error on violations.
Lattice validate_lattice(const ZMat& gram);

DiscriminantForm discriminant_form(const Lattice& lat);

// Builds a discriminant form from its finite data (fixtures and tests).
// Validates the divisibility chain and the torsion identities the table must
// satisfy (d_i * (g_i, g_j) and d_i^2 * q(g_i) integral, etc.).
DiscriminantForm df_from_parts(const std::vector<long>& orders, const QMat& q_gram);

DfElement df_zero(const DiscriminantForm& df);
DfElement df_normalize(const DiscriminantForm& df, std::vector<long> coords);
DfElement df_add(const DiscriminantForm& df, const DfElement& a, const DfElement& b);
DfElement df_neg(const DiscriminantForm& df, const DfElement& a);

// Enumeration in mixed-radix order; index 0 is the zero element.
long df_size_long(const DiscriminantForm& df);  // throws when |L'/L| overflows long
DfElement df_unrank(const DiscriminantForm& df, long idx);
long df_rank(const DiscriminantForm& df, const DfElement& a);

// q(a) mod 1 in [0,1), computed from the generator table by bilinearity.
mpq_class qvalue(const DiscriminantForm& df, const DfElement& a);
// (a,b) mod 1 in [0,1); symmetric.
mpq_class bilinear(const DiscriminantForm& df, const DfElement& a, const DfElement& b);

// g = sum_a e(q(a)), exact in Q(zeta_lcm(level,8)).
Cyclo gauss_sum(const DiscriminantForm& df);

// sqrt(|L'/L|) * e((sig_pos - sig_neg)/8) as an exact cyclotomic number.
Cyclo milgram_target(const Lattice& lat);
// gauss_sum == milgram_target, exactly.
bool milgram_check(const Lattice& lat);

std::string df_describe(const DiscriminantForm& df);  // printable table

}  // namespace vvmf
