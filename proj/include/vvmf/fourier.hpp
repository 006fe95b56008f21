#pragma once
// Fourier coefficient tables for vector-valued forms, their JSON round trip,
// and rational reconstruction from numeric tables.
//
// Component alpha of a form transforming under the conjugate (dual) action
// has its exponents in Z - q(alpha); a principal part (negative exponents of
// a form of the opposite type) has exponents in Z + q(alpha).  Tables key
// coefficients by (component rank, exact rational exponent).

#include <gmpxx.h>

#include <complex>
#include <map>
#include <string>
#include <vector>

#include "vvmf/lattice.hpp"

namespace vvmf {

struct CoeffKey {
    long alpha;    // component, canonical df enumeration rank
    mpq_class n;   // exponent

    bool operator<(const CoeffKey& o) const {
        if (alpha != o.alpha) return alpha < o.alpha;
        return n < o.n;
    }
    bool operator==(const CoeffKey& o) const { return alpha == o.alpha && n == o.n; }
};

// Exact-rational coefficient table.
struct FourierTable {
    mpq_class k;          // weight
    DiscriminantForm df;
    long N = 0;           // truncation: all valid exponents <= N are stored
    bool cusp = false;
    std::map<CoeffKey, mpq_class> c;
};

// Numeric stage of the same table, with per-coefficient error estimates.
struct FourierTableF {
    mpq_class k;
    DiscriminantForm df;
    long N = 0;
    std::map<CoeffKey, double> c;
    std::map<CoeffKey, double> err;
};

struct PrincipalPart {
    DiscriminantForm df;
    long depth = 0;                     // max |n| over stored terms
    std::map<CoeffKey, mpz_class> c;   // exponents n < 0, n in Z + q(alpha)
};

struct BasisTable {
    mpq_class k;
    DiscriminantForm df;
    long N = 0;
    bool cusp = true;
    std::vector<std::string> names;
    std::vector<FourierTable> forms;
};

// All (alpha, nu) with nu in Z - q(alpha) and 0 <= nu <= N, ordered by
// (alpha, nu); these are the exponents an E / cusp table stores.
std::vector<CoeffKey> table_support(const DiscriminantForm& df, long N);

bool df_equal(const DiscriminantForm& a, const DiscriminantForm& b);

// Coefficient lookup defaulting to 0 for in-range missing keys; throws
// std::domain_error when the exponent exceeds the truncation or is invalid
// for the component.
mpq_class table_coeff(const FourierTable& t, long alpha, const mpq_class& n);

// Evaluates component alpha at tau from the truncated expansion.
std::complex<double> eval_table_component(const FourierTableF& t, long alpha,
                                          std::complex<double> tau);
std::complex<double> eval_table_component(const FourierTable& t, long alpha,
                                          std::complex<double> tau);

// Deepest continued-fraction convergent with denominator <= max_den.
mpq_class best_rational(double x, const mpz_class& max_den);

// Snaps every coefficient to the earliest continued-fraction convergent
// lying within 10x the recorded error (plus a tiny floating-point floor) —
// the simplest rational consistent with the value.  When both integer
// convergents (floor and ceiling, the one possible equal-denominator pair)
// fall inside the window, the nearer one wins.  Throws
// std::runtime_error when no convergent with denominator <= max_den is that
// close, or when a rival rational of comparable simplicity (denominator
// within 4x the chosen one) lies within 1x the error (ambiguous
// reconstruction).  d_out receives the lcm of the denominators.
FourierTable rationalize(const FourierTableF& t, const mpz_class& max_den, mpz_class* d_out);

// JSON (de)serialization; formats documented in the README.
std::string df_to_json(const DiscriminantForm& df);
DiscriminantForm df_from_json_text(const std::string& text);
std::string table_to_json(const FourierTable& t);
FourierTable table_from_json_text(const std::string& text);
std::string basis_to_json(const BasisTable& b);
BasisTable basis_from_json_text(const std::string& text);
std::string ppart_to_json(const PrincipalPart& p);
PrincipalPart ppart_from_json_text(const std::string& text);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace vvmf
