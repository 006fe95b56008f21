#pragma once
// The vector-valued Eisenstein series attached to the zero component:
//   E(tau) = sum over cosets of <T, Z> \ Mp_2(Z) of phi(tau)^{-2k} rho*(g)^{-1} e_0,
// weight k > 2.  Cosets are indexed by bottom rows +-(c, d); for fixed c > 0
// and d0 = d mod c, the translates d0 + m c are summed in closed form
// (geometric acceleration of the inner T-line), which turns both point
// evaluation and Fourier coefficient extraction into sums over layers c with
// tails O(C^{2-k}).

#include <complex>
#include <string>
#include <vector>

#include "vvmf/fourier.hpp"
#include "vvmf/lattice.hpp"
#include "vvmf/metaplectic.hpp"

namespace vvmf {

struct EisOptions {
    long C = 0;                   // number of layers; <= 0 selects adaptively
    long adapt_max_C = 1024;      // layer budget for the adaptive mode
    long samples = 0;             // dft sampling count; 0 = 8 * (N + level)
    std::string method = "auto";  // "auto" | "unfold" | "dft"
    double tol = 1e-8;            // adaptive truncation target (absolute)
    int threads = 1;
};

// One representative per (c, d mod c) family, c = 0..C (c = 0 contributes the
// identity class only).
std::vector<MetaplecticElement> coset_reps(long C);

// Partial sum over layers c <= C at the point tau; *tail_bound (optional)
// receives a rigorous bound on the dropped layers plus inner truncations.
// Throws std::domain_error for k <= 2 or a weight incompatible with the
// representation's central character.
std::vector<std::complex<double>> eval_E(const DiscriminantForm& df, const mpq_class& k,
                                         std::complex<double> tau, long C,
                                         double* tail_bound = nullptr);

// Numeric Fourier coefficients c(E, alpha, nu) for all nu <= N in the
// component's exponent grid.  "unfold" evaluates the defining x-integral of
// each coefficient in closed form per layer; "dft" samples E on a horizontal
// line and discretizes the same integral.  Error estimates are recorded per
// coefficient.
FourierTableF fourier_coeffs_E(const DiscriminantForm& df, const mpq_class& k, long N,
                               const EisOptions& opt = {});

// Environment/CLI thread-count plumbing: value of --threads or VVMF_THREADS,
// defaulting to 1.
int resolve_thread_count(int cli_value);

}  // namespace vvmf
