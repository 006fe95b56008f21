#pragma once
// The Weil representation attached to a discriminant form: exact cyclotomic
// matrices on the group algebra C[L'/L], defined on the generators by
//   rho(T)[a] = e(q(a)) [a],      rho(S)[a] = (1/g) sum_b e(-(b,a)) [b],
// extended to arbitrary metaplectic elements through word decomposition.
// The dual representation is the entrywise conjugate (rho is unitary in this
// basis).  A float engine provides the same action in complex<double> for the
// high-volume Eisenstein sums.

#include <complex>
#include <vector>

#include "vvmf/cyclotomic.hpp"
#include "vvmf/lattice.hpp"
#include "vvmf/metaplectic.hpp"

namespace vvmf {

struct WeilMatrix {
    long dim = 0;
    std::vector<Cyclo> e;  // row-major

    WeilMatrix() = default;
    explicit WeilMatrix(long n) : dim(n), e(static_cast<size_t>(n) * n) {}
    Cyclo& at(long r, long c) { return e[static_cast<size_t>(r) * dim + c]; }
    const Cyclo& at(long r, long c) const { return e[static_cast<size_t>(r) * dim + c]; }
};

WeilMatrix wm_identity(long n);
WeilMatrix wm_mul(const WeilMatrix& A, const WeilMatrix& B);
WeilMatrix wm_conj(const WeilMatrix& A);            // entrywise conjugate
WeilMatrix wm_conj_transpose(const WeilMatrix& A);
bool wm_eq(const WeilMatrix& A, const WeilMatrix& B);

WeilMatrix rho_T(const DiscriminantForm& df);
WeilMatrix rho_S(const DiscriminantForm& df);

// rho along a word / for an arbitrary element (via word_decompose).
WeilMatrix rho_word(const DiscriminantForm& df, const Word& w);
WeilMatrix rho(const DiscriminantForm& df, const MetaplecticElement& g);
WeilMatrix rho_dual(const DiscriminantForm& df, const MetaplecticElement& g);

// Floating-point action for the Eisenstein layer.  For a coset word w whose
// matrix product has bottom row (c, d), dual_inv_column returns
// rho*(g0)^{-1} e_0 where g0 is the PRINCIPAL-branch lift of that matrix
// (the word's own lift is detected exactly and corrected by the scalar
// rho(S^4)).
class WeilFloatEngine {
public:
    explicit WeilFloatEngine(const DiscriminantForm& df);

    long dim() const { return n_; }
    // e(q(alpha)) for the canonical enumeration index alpha.
    std::complex<double> t_phase(long alpha) const { return t_[alpha]; }
    // rho(S^2)[0][0]: the scalar by which rho(S^2) acts on the 0 component.
    std::complex<double> s2_scalar() const { return s2_00_; }

    std::vector<std::complex<double>> dual_inv_column(const Word& w) const;

private:
    long n_ = 0;
    std::vector<std::complex<double>> S_;  // rho(S), row-major
    std::vector<std::complex<double>> t_;  // rho(T) diagonal
    std::complex<double> s4_{1.0, 0.0};    // scalar value of rho(S)^4
    std::complex<double> s2_00_{1.0, 0.0};
};

}  // namespace vvmf
