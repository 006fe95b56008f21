#include "vvmf/weil.hpp"

#include <cmath>
#include <stdexcept>

#include "vvmf/rat.hpp"

namespace vvmf {

WeilMatrix wm_identity(long n) {
    WeilMatrix I(n);
    for (long i = 0; i < n; ++i) I.at(i, i) = Cyclo(1);
    return I;
}

WeilMatrix wm_mul(const WeilMatrix& A, const WeilMatrix& B) {
    if (A.dim != B.dim) throw std::domain_error("wm_mul: dimension mismatch");
    WeilMatrix C(A.dim);
    for (long i = 0; i < A.dim; ++i)
        for (long k = 0; k < A.dim; ++k) {
            if (A.at(i, k).is_zero()) continue;
            for (long j = 0; j < A.dim; ++j) {
                if (B.at(k, j).is_zero()) continue;
                C.at(i, j) += A.at(i, k) * B.at(k, j);
            }
        }
    return C;
}

WeilMatrix wm_conj(const WeilMatrix& A) {
    WeilMatrix C(A.dim);
    for (size_t i = 0; i < A.e.size(); ++i) C.e[i] = A.e[i].conjugate();
    return C;
}

WeilMatrix wm_conj_transpose(const WeilMatrix& A) {
    WeilMatrix C(A.dim);
    for (long i = 0; i < A.dim; ++i)
        for (long j = 0; j < A.dim; ++j) C.at(i, j) = A.at(j, i).conjugate();
    return C;
}

bool wm_eq(const WeilMatrix& A, const WeilMatrix& B) {
    if (A.dim != B.dim) return false;
    for (size_t i = 0; i < A.e.size(); ++i)
        if (A.e[i] != B.e[i]) return false;
    return true;
}

WeilMatrix rho_T(const DiscriminantForm& df) {
    const long n = df_size_long(df);
    WeilMatrix M(n);
    for (long i = 0; i < n; ++i) M.at(i, i) = Cyclo::unit_phase(qvalue(df, df_unrank(df, i)));
    return M;
}

WeilMatrix rho_S(const DiscriminantForm& df) {
    const long n = df_size_long(df);
    Cyclo inv_g = gauss_sum(df).inverse();
    WeilMatrix M(n);
    std::vector<DfElement> els(n);
    for (long i = 0; i < n; ++i) els[i] = df_unrank(df, i);
    for (long b = 0; b < n; ++b)
        for (long a = 0; a < n; ++a)
            M.at(b, a) = inv_g * Cyclo::unit_phase(-bilinear(df, els[b], els[a]));
    return M;
}

namespace {

// Right-multiplies M by rho(T)^e (diagonal phase scaling of columns).
void apply_T_right(WeilMatrix& M, const DiscriminantForm& df, long e) {
    const long n = M.dim;
    for (long a = 0; a < n; ++a) {
        Cyclo ph = Cyclo::unit_phase(mpq_class(e) * qvalue(df, df_unrank(df, a)));
        for (long r = 0; r < n; ++r) M.at(r, a) = M.at(r, a) * ph;
    }
}

}  // namespace

WeilMatrix rho_word(const DiscriminantForm& df, const Word& w) {
    const long n = df_size_long(df);
    // rho(S)^j for j = 0..7 (S has order 8 in Mp_2(Z)).
    std::vector<WeilMatrix> spow;
    spow.push_back(wm_identity(n));
    spow.push_back(rho_S(df));
    for (int j = 2; j < 8; ++j) spow.push_back(wm_mul(spow[j - 1], spow[1]));
    WeilMatrix M = wm_identity(n);
    for (const auto& f : w) {
        if (f.g == Gen::T) {
            apply_T_right(M, df, f.e);
        } else {
            long j = ((f.e % 8) + 8) % 8;
            if (j) M = wm_mul(M, spow[j]);
        }
    }
    return M;
}

WeilMatrix rho(const DiscriminantForm& df, const MetaplecticElement& g) {
    return rho_word(df, word_decompose(g));
}

WeilMatrix rho_dual(const DiscriminantForm& df, const MetaplecticElement& g) {
    return wm_conj(rho(df, g));
}

// ---------------------------------------------------------------------------

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

std::complex<double> phase(const mpq_class& t) {
    double x = kTwoPi * to_double(mod1(t));
    return {std::cos(x), std::sin(x)};
}

// Integer metaplectic product for branch detection only (entries stay small
// for coset words; overflow guarded).
struct LiftI64 {
    long long a = 1, b = 0, c = 0, d = 1;
    int eps = 0;
};

int angle_class_i(long long x, long long y) {
    if (y < 0) return 0;
    if (y > 0) return 2;
    return x > 0 ? 1 : 3;
}

int cmp_angle_i(long long px, long long py, long long qx, long long qy) {
    int cp = angle_class_i(px, py), cq = angle_class_i(qx, qy);
    if (cp != cq) return cp < cq ? -1 : 1;
    if (cp == 1 || cp == 3) return 0;
    __int128 cross = static_cast<__int128>(px) * qy - static_cast<__int128>(py) * qx;
    return cross > 0 ? -1 : (cross < 0 ? 1 : 0);
}

int cocycle_i(long long ux, long long uy, long long vx, long long vy) {
    int cv = angle_class_i(vx, vy);
    if (cv == 0) return cmp_angle_i(ux, uy, -vx, -vy) > 0 ? -1 : 1;
    if (cv == 2 || cv == 3) return cmp_angle_i(ux, uy, -vx, -vy) <= 0 ? -1 : 1;
    return 1;
}

long long checked(__int128 v) {
    if (v > INT64_MAX / 4 || v < INT64_MIN / 4)
        throw std::overflow_error("coset word entries exceed the int64 fast path");
    return static_cast<long long>(v);
}

LiftI64 lift_mul(const LiftI64& A, const LiftI64& B) {
    LiftI64 P;
    P.a = checked(static_cast<__int128>(A.a) * B.a + static_cast<__int128>(A.b) * B.c);
    P.b = checked(static_cast<__int128>(A.a) * B.b + static_cast<__int128>(A.b) * B.d);
    P.c = checked(static_cast<__int128>(A.c) * B.a + static_cast<__int128>(A.d) * B.c);
    P.d = checked(static_cast<__int128>(A.c) * B.b + static_cast<__int128>(A.d) * B.d);
    int s = cocycle_i(P.d, P.c, B.d, B.c);
    P.eps = (A.eps + B.eps + (s < 0 ? 1 : 0)) & 1;
    return P;
}

LiftI64 lift_of_factor(Gen g, long e) {
    LiftI64 base;
    if (g == Gen::T) {
        base.b = 1;
    } else {
        base.a = 0; base.b = -1; base.c = 1; base.d = 0;
    }
    LiftI64 acc;
    long n = e;
    LiftI64 cur = base;
    if (n < 0) {
        // replace by inverse: for T, T^-1; for S, S^7 (same matrix as S^-1, branch exact)
        if (g == Gen::T) {
            cur.b = -1;
            n = -n;
        } else {
            n = ((n % 8) + 8) % 8;
        }
    }
    for (long i = 0; i < n; ++i) acc = lift_mul(acc, cur);
    return acc;
}

}  // namespace

WeilFloatEngine::WeilFloatEngine(const DiscriminantForm& df) {
    n_ = df_size_long(df);
    t_.resize(n_);
    std::vector<DfElement> els(n_);
    for (long i = 0; i < n_; ++i) {
        els[i] = df_unrank(df, i);
        t_[i] = phase(qvalue(df, els[i]));
    }
    Cyclo g = gauss_sum(df);
    std::complex<double> inv_g = 1.0 / g.embed();
    S_.assign(static_cast<size_t>(n_) * n_, {});
    for (long b = 0; b < n_; ++b)
        for (long a = 0; a < n_; ++a)
            S_[static_cast<size_t>(b) * n_ + a] = inv_g * phase(-bilinear(df, els[b], els[a]));
    // rho(S)^4 is scalar; read off its (0,0) entry via two squarings.
    std::vector<std::complex<double>> S2(static_cast<size_t>(n_) * n_);
    for (long i = 0; i < n_; ++i)
        for (long j = 0; j < n_; ++j) {
            std::complex<double> acc = 0;
            for (long k = 0; k < n_; ++k)
                acc += S_[static_cast<size_t>(i) * n_ + k] * S_[static_cast<size_t>(k) * n_ + j];
            S2[static_cast<size_t>(i) * n_ + j] = acc;
        }
    std::complex<double> acc = 0;
    for (long k = 0; k < n_; ++k) acc += S2[k] * S2[static_cast<size_t>(k) * n_];
    s4_ = acc;
    s2_00_ = S2[0];
}

std::vector<std::complex<double>> WeilFloatEngine::dual_inv_column(const Word& w) const {
    // Row 0 of rho(word), since rho*(g)^(-1) = transpose(rho(g)) by unitarity.
    std::vector<std::complex<double>> r(n_, 0.0), tmp(n_);
    r[0] = 1.0;
    LiftI64 lift;
    for (const auto& f : w) {
        lift = lift_mul(lift, lift_of_factor(f.g, f.e));
        if (f.g == Gen::T) {
            for (long a = 0; a < n_; ++a) {
                // t_phase^e; e is small for coset words, compute by repeated powers
                std::complex<double> ph = std::pow(t_[a], static_cast<double>(f.e));
                r[a] *= ph;
            }
        } else {
            long j = ((f.e % 8) + 8) % 8;
            // rho(S)^-1 is the conjugate transpose; going backwards is cheaper
            // for j > 4 (word_decompose emits S^-1 factors).
            long fwd = j <= 4 ? j : 0, bwd = j <= 4 ? 0 : 8 - j;
            for (long rep = 0; rep < fwd; ++rep) {
                for (long col = 0; col < n_; ++col) {
                    std::complex<double> acc = 0;
                    for (long row = 0; row < n_; ++row)
                        acc += r[row] * S_[static_cast<size_t>(row) * n_ + col];
                    tmp[col] = acc;
                }
                std::swap(r, tmp);
            }
            for (long rep = 0; rep < bwd; ++rep) {
                for (long col = 0; col < n_; ++col) {
                    std::complex<double> acc = 0;
                    for (long row = 0; row < n_; ++row)
                        acc += r[row] * std::conj(S_[static_cast<size_t>(col) * n_ + row]);
                    tmp[col] = acc;
                }
                std::swap(r, tmp);
            }
        }
    }
    if (lift.eps) {
        // Word evaluated to the non-principal lift; right-multiply by rho(S^4).
        for (auto& v : r) v *= s4_;
    }
    return r;
}

}  // namespace vvmf
