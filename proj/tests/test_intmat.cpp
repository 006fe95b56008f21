#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "vvmf/intmat.hpp"

using vvmf::QMat;
using vvmf::ZMat;

namespace {

ZMat mat(long n, std::initializer_list<long> v) {
    ZMat m(n, n);
    auto it = v.begin();
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) m.at(i, j) = *it++;
    return m;
}

// cofactor-expansion determinant, the slow reference
mpz_class det_ref(const ZMat& a) {
    const long n = a.rows;
    if (n == 1) return a.at(0, 0);
    mpz_class s = 0;
    for (long j = 0; j < n; ++j) {
        ZMat minor(n - 1, n - 1);
        for (long r = 1; r < n; ++r) {
            long cc = 0;
            for (long c = 0; c < n; ++c) {
                if (c == j) continue;
                minor.at(r - 1, cc++) = a.at(r, c);
            }
        }
        mpz_class t = a.at(0, j) * det_ref(minor);
        if (j % 2 == 0)
            s += t;
        else
            s -= t;
    }
    return s;
}

ZMat random_mat(std::mt19937_64& rng, long n, long span) {
    ZMat m(n, n);
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j)
            m.at(i, j) = static_cast<long>(rng() % (2 * span + 1)) - span;
    return m;
}

}  // namespace

TEST_CASE("determinant matches cofactor expansion") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        long n = 1 + static_cast<long>(rng() % 4);
        ZMat m = random_mat(rng, n, 5);
        CHECK(vvmf::det_bareiss(m) == det_ref(m));
    }
    CHECK(vvmf::det_bareiss(mat(2, {2, 4, 1, 2})) == 0);
}

TEST_CASE("smith normal form: U A V = D with unimodular transforms") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        long n = 1 + static_cast<long>(rng() % 4);
        ZMat a = random_mat(rng, n, 6);
        vvmf::SmithDecomposition s = vvmf::smith_normal_form(a);
        CHECK(abs(vvmf::det_bareiss(s.U)) == 1);
        CHECK(abs(vvmf::det_bareiss(s.V)) == 1);
        ZMat lhs = vvmf::zmat_mul(vvmf::zmat_mul(s.U, a), s.V);
        CHECK(lhs == s.D);
        // diagonal, nonnegative, divisibility chain
        for (long i = 0; i < n; ++i)
            for (long j = 0; j < n; ++j)
                if (i != j) CHECK(s.D.at(i, j) == 0);
        for (long i = 0; i + 1 < n; ++i) {
            CHECK(s.D.at(i, i) >= 0);
            if (s.D.at(i, i) != 0) CHECK(s.D.at(i + 1, i + 1) % s.D.at(i, i) == 0);
            if (s.D.at(i, i) == 0) CHECK(s.D.at(i + 1, i + 1) == 0);
        }
    }
}

TEST_CASE("smith normal form: known elementary divisors") {
    vvmf::SmithDecomposition s = vvmf::smith_normal_form(mat(2, {2, 4, 4, 2}));
    CHECK(s.D.at(0, 0) == 2);
    CHECK(s.D.at(1, 1) == 6);

    s = vvmf::smith_normal_form(mat(3, {2, 0, 0, 0, 2, 0, 0, 0, -2}));
    CHECK(s.D.at(0, 0) == 2);
    CHECK(s.D.at(1, 1) == 2);
    CHECK(s.D.at(2, 2) == 2);
}

TEST_CASE("rank") {
    CHECK(vvmf::rank_bareiss(mat(2, {1, 2, 2, 4})) == 1);
    CHECK(vvmf::rank_bareiss(mat(3, {1, 0, 0, 0, 1, 0, 1, 1, 0})) == 2);
    CHECK(vvmf::rank_bareiss(mat(3, {0, 0, 0, 0, 0, 0, 0, 0, 0})) == 0);
    CHECK(vvmf::rank_bareiss(mat(2, {3, 1, 1, 1})) == 2);
    ZMat tall(3, 1);
    tall.at(0, 0) = 0;
    tall.at(1, 0) = 5;
    tall.at(2, 0) = 7;
    CHECK(vvmf::rank_bareiss(tall) == 1);
}

TEST_CASE("inertia of symmetric matrices") {
    auto [p1, n1, z1] = vvmf::symmetric_inertia(mat(2, {2, 0, 0, -2}));
    CHECK(p1 == 1);
    CHECK(n1 == 1);
    CHECK(z1 == 0);

    auto [p2, n2, z2] = vvmf::symmetric_inertia(mat(2, {2, 1, 1, 2}));
    CHECK(p2 == 2);
    CHECK(n2 == 0);

    // zero diagonal forces the off-diagonal path
    auto [p3, n3, z3] = vvmf::symmetric_inertia(mat(2, {0, 1, 1, 0}));
    CHECK(p3 == 1);
    CHECK(n3 == 1);
    CHECK(z3 == 0);

    auto [p4, n4, z4] = vvmf::symmetric_inertia(mat(3, {1, 0, 0, 0, 0, 0, 0, 0, -3}));
    CHECK(p4 == 1);
    CHECK(n4 == 1);
    CHECK(z4 == 1);
}

TEST_CASE("rational inverse") {
    ZMat a = mat(3, {2, 1, 0, 1, 2, 1, 0, 1, 2});
    QMat q = vvmf::to_qmat(a);
    QMat inv = vvmf::qmat_inverse(q);
    for (long i = 0; i < 3; ++i)
        for (long j = 0; j < 3; ++j) {
            mpq_class s = 0;
            for (long k = 0; k < 3; ++k) s += q.at(i, k) * inv.at(k, j);
            CHECK(s == (i == j ? 1 : 0));
        }
    CHECK_THROWS_AS(vvmf::qmat_inverse(vvmf::to_qmat(mat(2, {1, 2, 2, 4}))),
                    std::domain_error);
}
