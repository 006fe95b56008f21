#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <utility>

#include "oracles.hpp"
#include "vvmf/congruence.hpp"
#include "vvmf/fourier.hpp"
#include "vvmf/lattice.hpp"

using vvmf::BasisTable;
using vvmf::CoeffKey;
using vvmf::DiscriminantForm;
using vvmf::FourierTable;
using vvmf::PrincipalPart;

namespace {

DiscriminantForm trivial_df() { return vvmf::df_from_parts({}, vvmf::QMat(0, 0)); }

// exact weight-12 table 1 + (65520/691) sum sigma_11(n) q^n
FourierTable classical_E12(long N) {
    FourierTable t;
    t.k = 12;
    t.df = trivial_df();
    t.N = N;
    mpq_class r = oracle::eisenstein_ratio(12);
    t.c[CoeffKey{0, mpq_class(0)}] = 1;
    for (long n = 1; n <= N; ++n)
        t.c[CoeffKey{0, mpq_class(n)}] = r * mpq_class(oracle::sigma(11, n));
    return t;
}

BasisTable delta_basis(long N) {
    BasisTable b;
    b.k = 12;
    b.df = trivial_df();
    b.N = N;
    b.cusp = true;
    b.names = {"Delta"};
    FourierTable f;
    f.k = 12;
    f.df = b.df;
    f.N = N;
    f.cusp = true;
    std::vector<mpz_class> tau = oracle::delta_coeffs(N);
    for (long n = 1; n <= N; ++n) f.c[CoeffKey{0, mpq_class(n)}] = mpq_class(tau[n]);
    b.forms = {f};
    return b;
}

PrincipalPart tail(std::initializer_list<std::pair<long, long>> terms) {
    PrincipalPart p;
    p.df = trivial_df();
    for (auto [n, c] : terms) {
        p.c[CoeffKey{0, mpq_class(n)}] = c;
        p.depth = std::max(p.depth, -n);
    }
    return p;
}

}  // namespace

TEST_CASE("known cusp coefficients") {
    std::vector<mpz_class> tau = oracle::delta_coeffs(12);
    CHECK(tau[1] == 1);
    CHECK(tau[2] == -24);
    CHECK(tau[3] == 252);
    CHECK(tau[4] == -1472);
    CHECK(tau[11] == 534612);
    CHECK(tau[12] == -370944);
    // multiplicativity spot-check: tau(6) = tau(2) tau(3)
    CHECK(tau[6] == tau[2] * tau[3]);
}

TEST_CASE("pairing against a table") {
    BasisTable b = delta_basis(10);
    CHECK(vvmf::pairing(tail({{-1, 1}}), b.forms[0]) == 1);           // tau(1)
    CHECK(vvmf::pairing(tail({{-2, 1}, {-1, 24}}), b.forms[0]) == 0); // tau(2) + 24 tau(1)
    CHECK(vvmf::pairing(tail({{-3, 2}}), b.forms[0]) == 504);         // 2 tau(3)

    PrincipalPart deep = tail({{-11, 1}});
    CHECK_THROWS_AS(vvmf::pairing(deep, delta_basis(5).forms[0]), std::domain_error);
}

TEST_CASE("obstruction verdicts") {
    BasisTable b = delta_basis(10);
    vvmf::ObstructionReport ok = vvmf::obstruction_check(tail({{-2, 1}, {-1, 24}}), b);
    CHECK(ok.admissible);
    CHECK(ok.witness.empty());

    vvmf::ObstructionReport bad = vvmf::obstruction_check(tail({{-1, 1}}), b);
    CHECK_FALSE(bad.admissible);
    CHECK(bad.witness == "Delta");

    BasisTable notcusp = b;
    notcusp.cusp = false;
    CHECK_THROWS_AS(vvmf::obstruction_check(tail({{-1, 1}}), notcusp), std::domain_error);
}

TEST_CASE("constant term values") {
    FourierTable E = classical_E12(10);
    // (1, 24) tail: -(1/2) * 2 * (65520/691) * (sigma_11(2) + 24) = -196560
    CHECK(vvmf::constant_term(tail({{-2, 1}, {-1, 24}}), E) == -196560);
    // (1, -252) tail at depth 3: -(65520/691) * (sigma_11(3) - 252) = -16773120
    CHECK(vvmf::constant_term(tail({{-3, 1}, {-1, -252}}), E) == -16773120);

    // the normalization firewall: doubling the table and keeping the tag
    // halves nothing -- enorm / c(E,0,0) fixes the scale
    FourierTable doubled = E;
    for (auto& [key, val] : doubled.c) val *= 2;
    CHECK(vvmf::constant_term(tail({{-2, 1}, {-1, 24}}), doubled) == -196560);
    // tag 1 on the unit-constant table halves the result
    CHECK(vvmf::constant_term(tail({{-2, 1}, {-1, 24}}), E, 1) == -98280);
}

TEST_CASE("congruence solution: the 691 fixture") {
    FourierTable E = classical_E12(10);
    BasisTable b = delta_basis(10);
    vvmf::CongruenceSolution sol = vvmf::congruence_solve(E, 691, b, 10);
    REQUIRE(sol.combo.size() == 1);
    CHECK(sol.combo[0] == 65520 % 691);
    CHECK(sol.combo[0] == 566);
    // f = x * Delta, and 691*c(E,n) - c(f,n) is divisible by 691 for n <= 10
    std::vector<mpz_class> tau = oracle::delta_coeffs(10);
    for (long n = 1; n <= 10; ++n) {
        mpq_class fn = vvmf::table_coeff(sol.f, 0, n);
        CHECK(fn == sol.combo[0] * mpq_class(tau[n]));
        mpq_class diff = 691 * vvmf::table_coeff(E, 0, n) - fn;
        CHECK(diff.get_den() == 1);
        CHECK(diff.get_num() % 691 == 0);
    }
}

TEST_CASE("congruence solution: integral series needs no correction") {
    // an integer table (d = 1) pairs with the zero combination
    FourierTable E = classical_E12(8);
    for (auto& [key, val] : E.c) val *= 691;  // clear the denominator
    BasisTable b = delta_basis(8);
    vvmf::CongruenceSolution sol = vvmf::congruence_solve(E, 1, b, 8);
    REQUIRE(sol.combo.size() == 1);
    CHECK(sol.combo[0] == 0);
    CHECK(sol.f.c.empty());
}

TEST_CASE("congruence solver failure modes") {
    BasisTable b = delta_basis(6);

    // non-integral scaled target
    FourierTable bad;
    bad.k = 12;
    bad.df = trivial_df();
    bad.N = 6;
    bad.c[CoeffKey{0, mpq_class(1)}] = mpq_class(1, 3);
    CHECK_THROWS_AS(vvmf::congruence_solve(bad, 2, b, 6), std::domain_error);

    // basis scaled by 2 cannot hit an odd target mod 4
    BasisTable even = b;
    for (auto& [key, val] : even.forms[0].c) val *= 2;
    FourierTable odd;
    odd.k = 12;
    odd.df = trivial_df();
    odd.N = 6;
    odd.c[CoeffKey{0, mpq_class(1)}] = mpq_class(1, 4);  // d * c = 1
    CHECK_THROWS_AS(vvmf::congruence_solve(odd, 4, even, 6), std::domain_error);

    // truncation below the requested depth
    CHECK_THROWS_AS(vvmf::congruence_solve(classical_E12(4), 691, b, 6), std::domain_error);
}

TEST_CASE("stabilization rank") {
    BasisTable b = delta_basis(6);
    vvmf::StabilizationReport r1 = vvmf::stabilization_rank(b, 1);
    CHECK(r1.rank == 1);
    CHECK(r1.stable);

    // a second form that agrees with the first through n = 1
    BasisTable two = b;
    FourierTable g = b.forms[0];
    g.c[CoeffKey{0, mpq_class(2)}] = g.c.at(CoeffKey{0, mpq_class(2)}) + 7;
    two.forms.push_back(g);
    two.names.push_back("Delta+7q2");
    vvmf::StabilizationReport under = vvmf::stabilization_rank(two, 1);
    CHECK(under.rank == 1);
    CHECK_FALSE(under.stable);  // under-truncated: the forms look dependent
    vvmf::StabilizationReport enough = vvmf::stabilization_rank(two, 2);
    CHECK(enough.rank == 2);
    CHECK(enough.stable);
}
