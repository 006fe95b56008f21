#pragma once
// The metaplectic double cover Mp_2(Z): pairs (g, phi) with g in SL_2(Z) and
// phi(tau) = (-1)^eps * principal_sqrt(c*tau + d).  Products track the branch
// exactly: the two square roots multiply to +-principal_sqrt of the product
// automorphy factor, and the sign is decided by integer angle comparisons on
// the points (d, c) — no floating point is involved.

#include <gmpxx.h>

#include <complex>
#include <vector>

namespace vvmf {

struct MetaplecticElement {
    mpz_class a{1}, b{0}, c{0}, d{1};  // det = 1
    int eps = 0;                       // phi = (-1)^eps * principal sqrt(c tau + d)

    bool operator==(const MetaplecticElement& o) const {
        return a == o.a && b == o.b && c == o.c && d == o.d && eps == o.eps;
    }
};

MetaplecticElement mp_identity();
MetaplecticElement mp_S();  // (0,-1;1,0), principal branch
MetaplecticElement mp_T();  // (1,1;0,1), principal branch

MetaplecticElement mp_mul(const MetaplecticElement& A, const MetaplecticElement& B);
MetaplecticElement mp_inv(const MetaplecticElement& A);
MetaplecticElement mp_pow(const MetaplecticElement& A, long e);

// Sign of princ_sqrt(j_A(B tau)) * princ_sqrt(j_B(tau)) / princ_sqrt(j_AB(tau))
// as +-1, where u = (d_AB, c_AB) and v = (d_B, c_B); exact.
int sqrt_branch_cocycle(const mpz_class& u_x, const mpz_class& u_y, const mpz_class& v_x,
                        const mpz_class& v_y);

// phi(tau) for Im(tau) > 0.
std::complex<double> mp_phi_at(const MetaplecticElement& A, std::complex<double> tau);

// Words over the generators; a factor is S^e or T^e.
enum class Gen { S, T };
struct WordFactor {
    Gen g;
    long e;
};
using Word = std::vector<WordFactor>;

MetaplecticElement mp_eval_word(const Word& w);

// Euclidean reduction of the first column produces a word whose product is
// exactly the input element (branch included; a trailing S^4 fixes the sign).
// Verified internally by re-multiplication.
Word word_decompose(const MetaplecticElement& A);

// Some element of SL_2(Z) with bottom row (c, d), gcd(c, d) = 1, as a word;
// its lift is whatever the word multiplies to.
Word word_for_bottom_row(const mpz_class& c, const mpz_class& d);

}  // namespace vvmf
