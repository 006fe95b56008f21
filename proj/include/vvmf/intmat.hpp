#pragma once
// Dense exact matrices over Z and Q with the factorizations the lattice
// layer needs: Smith normal form with unimodular transforms, fraction-free
// (Bareiss) determinant and rank, and Sylvester inertia of symmetric
// matrices via rational congruence diagonalization.

#include <gmpxx.h>

#include <vector>

namespace vvmf {

struct ZMat {
    long rows = 0, cols = 0;
    std::vector<mpz_class> a;

    ZMat() = default;
    ZMat(long r, long c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}

    mpz_class& at(long i, long j) { return a[static_cast<size_t>(i) * cols + j]; }
    const mpz_class& at(long i, long j) const { return a[static_cast<size_t>(i) * cols + j]; }

    static ZMat identity(long n);
    bool operator==(const ZMat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
};

struct QMat {
    long rows = 0, cols = 0;
    std::vector<mpq_class> a;

    QMat() = default;
    QMat(long r, long c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}

    mpq_class& at(long i, long j) { return a[static_cast<size_t>(i) * cols + j]; }
    const mpq_class& at(long i, long j) const { return a[static_cast<size_t>(i) * cols + j]; }
};

ZMat zmat_mul(const ZMat& A, const ZMat& B);
QMat to_qmat(const ZMat& A);

// U*A*V = D with U, V unimodular and D diagonal, d_1 | d_2 | ... , d_i >= 0.
struct SmithDecomposition {
    ZMat U, D, V;
};
SmithDecomposition smith_normal_form(const ZMat& A);

// Exact determinant / rank by fraction-free elimination.
mpz_class det_bareiss(ZMat A);
long rank_bareiss(ZMat A);

// Counts of positive / negative / zero pivots of a symmetric matrix under
// exact congruence diagonalization.
struct Inertia {
    long pos = 0, neg = 0, zero = 0;
};
Inertia symmetric_inertia(const ZMat& sym);

// Inverse of a square rational matrix; throws std::domain_error if singular.
QMat qmat_inverse(const QMat& A);

}  // namespace vvmf
