#pragma once

#include <string>
#include <vector>

#include <gmpxx.h>

#include "vvmf/fourier.hpp"

namespace vvmf {

// Pairing of a polar tail against a form's coefficient table:
// sum over tail terms a(alpha, n) * c(f, alpha, -n).
mpq_class pairing(const PrincipalPart& p, const FourierTable& f);

struct ObstructionReport {
    bool admissible = true;
    std::string witness;  // name of the first cusp form with nonzero pairing
};

// A polar tail extends to a holomorphic object precisely when it pairs to
// zero with every cusp form in the dual space; checks each one in turn.
ObstructionReport obstruction_check(const PrincipalPart& p, const BasisTable& cusps);

// Value of the constant Fourier coefficient of the input built from tail p:
// -(1/2) * sum a(alpha, n) * (enorm / c(E,0,0)) * c(E, alpha, -n).
mpq_class constant_term(const PrincipalPart& p, const FourierTable& E, long enorm = 2);

struct CongruenceSolution {
    std::vector<mpz_class> combo;  // one residue in [0, d) per basis form
    FourierTable f;                // the combination itself, truncated at N
    mpz_class d;
    long N = 0;
};

// Finds integers x_i with  sum x_i c(f_i, alpha, n) == d * c(E, alpha, n) (mod d)
// for all 0 < n <= N, i.e. a cusp form congruent to d*E away from the constant
// term.  Throws when no solution exists.
CongruenceSolution congruence_solve(const FourierTable& E, const mpz_class& d,
                                    const BasisTable& cusps, long N);

struct StabilizationReport {
    long rank = 0;
    bool stable = false;  // rank equals the number of forms
};

// Rank of the coefficient matrix of the basis truncated at N; the solver's
// answer is trustworthy once the truncated forms are linearly independent.
StabilizationReport stabilization_rank(const BasisTable& cusps, long N);

}  // namespace vvmf
