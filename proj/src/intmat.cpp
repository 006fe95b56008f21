#include "vvmf/intmat.hpp"

#include <algorithm>
#include <stdexcept>

namespace vvmf {

ZMat ZMat::identity(long n) {
    ZMat I(n, n);
    for (long i = 0; i < n; ++i) I.at(i, i) = 1;
    return I;
}

ZMat zmat_mul(const ZMat& A, const ZMat& B) {
    if (A.cols != B.rows) throw std::domain_error("zmat_mul: shape mismatch");
    ZMat C(A.rows, B.cols);
    for (long i = 0; i < A.rows; ++i)
        for (long k = 0; k < A.cols; ++k) {
            if (A.at(i, k) == 0) continue;
            for (long j = 0; j < B.cols; ++j) C.at(i, j) += A.at(i, k) * B.at(k, j);
        }
    return C;
}

QMat to_qmat(const ZMat& A) {
    QMat Q(A.rows, A.cols);
    for (size_t i = 0; i < A.a.size(); ++i) Q.a[i] = mpq_class(A.a[i]);
    return Q;
}

namespace {

void swap_rows(ZMat& M, long i, long j) {
    if (i == j) return;
    for (long c = 0; c < M.cols; ++c) std::swap(M.at(i, c), M.at(j, c));
}
void swap_cols(ZMat& M, long i, long j) {
    if (i == j) return;
    for (long r = 0; r < M.rows; ++r) std::swap(M.at(r, i), M.at(r, j));
}
// row_i -= q * row_j
void row_axpy(ZMat& M, long i, long j, const mpz_class& q) {
    if (q == 0) return;
    for (long c = 0; c < M.cols; ++c) M.at(i, c) -= q * M.at(j, c);
}
// col_i -= q * col_j
void col_axpy(ZMat& M, long i, long j, const mpz_class& q) {
    if (q == 0) return;
    for (long r = 0; r < M.rows; ++r) M.at(r, i) -= q * M.at(r, j);
}
void negate_row(ZMat& M, long i) {
    for (long c = 0; c < M.cols; ++c) M.at(i, c) = -M.at(i, c);
}

}  // namespace

SmithDecomposition smith_normal_form(const ZMat& A) {
    SmithDecomposition S;
    S.D = A;
    S.U = ZMat::identity(A.rows);
    S.V = ZMat::identity(A.cols);
    ZMat& D = S.D;
    const long n = std::min(A.rows, A.cols);

    for (long t = 0; t < n; ++t) {
        // Pivot: smallest nonzero |entry| in the trailing block.
        long pi = -1, pj = -1;
        for (long i = t; i < D.rows; ++i)
            for (long j = t; j < D.cols; ++j) {
                if (D.at(i, j) == 0) continue;
                if (pi < 0 || mpz_cmpabs(D.at(i, j).get_mpz_t(), D.at(pi, pj).get_mpz_t()) < 0) {
                    pi = i;
                    pj = j;
                }
            }
        if (pi < 0) break;  // trailing block is zero
        swap_rows(D, t, pi);
        swap_rows(S.U, t, pi);
        swap_cols(D, t, pj);
        swap_cols(S.V, t, pj);

        bool clean = false;
        while (!clean) {
            clean = true;
            // Clear column t by Euclidean steps.
            for (long i = t + 1; i < D.rows; ++i) {
                if (D.at(i, t) == 0) continue;
                mpz_class q = D.at(i, t) / D.at(t, t);  // truncated quotient
                row_axpy(D, i, t, q);
                row_axpy(S.U, i, t, q);
                if (D.at(i, t) != 0) {
                    swap_rows(D, t, i);
                    swap_rows(S.U, t, i);
                    clean = false;
                }
            }
            // Clear row t.
            for (long j = t + 1; j < D.cols; ++j) {
                if (D.at(t, j) == 0) continue;
                mpz_class q = D.at(t, j) / D.at(t, t);
                col_axpy(D, j, t, q);
                col_axpy(S.V, j, t, q);
                if (D.at(t, j) != 0) {
                    swap_cols(D, t, j);
                    swap_cols(S.V, t, j);
                    clean = false;
                }
            }
            if (!clean) continue;
            // Divisibility: fold in any entry the pivot does not divide.
            for (long i = t + 1; i < D.rows && clean; ++i)
                for (long j = t + 1; j < D.cols && clean; ++j)
                    if (D.at(i, j) % D.at(t, t) != 0) {
                        row_axpy(D, t, i, mpz_class(-1));  // row_t += row_i
                        row_axpy(S.U, t, i, mpz_class(-1));
                        clean = false;
                    }
        }
        if (D.at(t, t) < 0) {
            negate_row(D, t);
            negate_row(S.U, t);
        }
    }
    return S;
}

mpz_class det_bareiss(ZMat A) {
    if (A.rows != A.cols) throw std::domain_error("det_bareiss: matrix not square");
    const long n = A.rows;
    if (n == 0) return 1;
    mpz_class prev = 1;
    int sign = 1;
    for (long t = 0; t < n - 1; ++t) {
        if (A.at(t, t) == 0) {
            long s = -1;
            for (long i = t + 1; i < n; ++i)
                if (A.at(i, t) != 0) { s = i; break; }
            if (s < 0) return 0;
            swap_rows(A, t, s);
            sign = -sign;
        }
        for (long i = t + 1; i < n; ++i)
            for (long j = t + 1; j < n; ++j) {
                mpz_class num = A.at(i, j) * A.at(t, t) - A.at(i, t) * A.at(t, j);
                mpz_class q;
                mpz_divexact(q.get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
                A.at(i, j) = q;
            }
        prev = A.at(t, t);
    }
    return sign > 0 ? A.at(n - 1, n - 1) : mpz_class(-A.at(n - 1, n - 1));
}

long rank_bareiss(ZMat A) {
    const long n = A.rows, m = A.cols;
    mpz_class prev = 1;
    long r = 0;
    for (long t = 0; r < n && t < m; ++t) {
        long s = -1;
        for (long i = r; i < n; ++i)
            if (A.at(i, t) != 0) { s = i; break; }
        if (s < 0) continue;
        swap_rows(A, r, s);
        for (long i = r + 1; i < n; ++i)
            for (long j = t + 1; j < m; ++j) {
                mpz_class num = A.at(i, j) * A.at(r, t) - A.at(i, t) * A.at(r, j);
                mpz_class q;
                mpz_divexact(q.get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
                A.at(i, j) = q;
            }
        for (long i = r + 1; i < n; ++i) A.at(i, t) = 0;
        prev = A.at(r, t);
        ++r;
    }
    return r;
}

Inertia symmetric_inertia(const ZMat& sym) {
    if (sym.rows != sym.cols) throw std::domain_error("symmetric_inertia: matrix not square");
    const long n = sym.rows;
    QMat G = to_qmat(sym);
    Inertia out;
    for (long t = 0; t < n; ++t) {
        if (G.at(t, t) == 0) {
            long s = -1;
            for (long j = t + 1; j < n; ++j)
                if (G.at(j, j) != 0) { s = j; break; }
            if (s >= 0) {
                for (long c = 0; c < n; ++c) std::swap(G.at(t, c), G.at(s, c));
                for (long r = 0; r < n; ++r) std::swap(G.at(r, t), G.at(r, s));
            } else {
                long u = -1;
                for (long j = t + 1; j < n; ++j)
                    if (G.at(t, j) != 0) { u = j; break; }
                if (u < 0) {
                    ++out.zero;  // row (and column) t vanish on the trailing block
                    continue;
                }
                // All trailing diagonal entries vanish: row/col addition makes
                // G(t,t) = 2*G(t,u) != 0.
                for (long c = 0; c < n; ++c) G.at(t, c) += G.at(u, c);
                for (long r = 0; r < n; ++r) G.at(r, t) += G.at(r, u);
            }
        }
        const mpq_class p = G.at(t, t);
        if (p > 0) ++out.pos; else ++out.neg;
        for (long i = t + 1; i < n; ++i) {
            if (G.at(i, t) == 0) continue;
            mpq_class f = G.at(i, t) / p;
            for (long c = 0; c < n; ++c) G.at(i, c) -= f * G.at(t, c);
            for (long r = 0; r < n; ++r) G.at(r, i) -= f * G.at(r, t);
        }
    }
    return out;
}

QMat qmat_inverse(const QMat& A) {
    if (A.rows != A.cols) throw std::domain_error("qmat_inverse: matrix not square");
    const long n = A.rows;
    QMat M = A, I(n, n);
    for (long i = 0; i < n; ++i) I.at(i, i) = 1;
    for (long t = 0; t < n; ++t) {
        long s = -1;
        for (long i = t; i < n; ++i)
            if (M.at(i, t) != 0) { s = i; break; }
        if (s < 0) throw std::domain_error("qmat_inverse: singular matrix");
        for (long c = 0; c < n; ++c) {
            std::swap(M.at(t, c), M.at(s, c));
            std::swap(I.at(t, c), I.at(s, c));
        }
        mpq_class p = M.at(t, t);
        for (long c = 0; c < n; ++c) {
            M.at(t, c) /= p;
            I.at(t, c) /= p;
        }
        for (long i = 0; i < n; ++i) {
            if (i == t || M.at(i, t) == 0) continue;
            mpq_class f = M.at(i, t);
            for (long c = 0; c < n; ++c) {
                M.at(i, c) -= f * M.at(t, c);
                I.at(i, c) -= f * I.at(t, c);
            }
        }
    }
    return I;
}

}  // namespace vvmf
