#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>

#include "vvmf/fourier.hpp"
#include "vvmf/lattice.hpp"
#include "vvmf/rat.hpp"

using vvmf::CoeffKey;
using vvmf::DiscriminantForm;
using vvmf::FourierTable;
using vvmf::FourierTableF;
using vvmf::ZMat;

namespace {

DiscriminantForm example_df() {
    ZMat g(5, 5);
    long d[5] = {2, 2, -2, -2, -2};
    for (long i = 0; i < 5; ++i) g.at(i, i) = d[i];
    return vvmf::discriminant_form(vvmf::validate_lattice(g));
}

DiscriminantForm trivial_df() { return vvmf::df_from_parts({}, vvmf::QMat(0, 0)); }

}  // namespace

TEST_CASE("support grid: offsets follow the component") {
    DiscriminantForm df = example_df();
    std::vector<CoeffKey> keys = vvmf::table_support(df, 3);
    const long n = vvmf::df_size_long(df);
    long count = 0;
    for (long a = 0; a < n; ++a) {
        mpq_class off = vvmf::mod1(-vvmf::qvalue(df, vvmf::df_unrank(df, a)));
        count += off == 0 ? 4 : 3;
        for (const CoeffKey& k : keys)
            if (k.alpha == a) {
                CHECK(vvmf::mod1(k.n + vvmf::qvalue(df, vvmf::df_unrank(df, a))) == 0);
                CHECK(k.n >= 0);
                CHECK(k.n <= 3);
            }
    }
    CHECK(static_cast<long>(keys.size()) == count);

    std::vector<CoeffKey> triv = vvmf::table_support(trivial_df(), 4);
    CHECK(triv.size() == 5);  // n = 0..4
}

TEST_CASE("coefficient lookup validates the exponent") {
    FourierTable t;
    t.k = 12;
    t.df = trivial_df();
    t.N = 5;
    t.c[CoeffKey{0, mpq_class(1)}] = mpq_class(65520, 691);
    CHECK(vvmf::table_coeff(t, 0, 1) == mpq_class(65520, 691));
    CHECK(vvmf::table_coeff(t, 0, 2) == 0);  // in range, not stored
    CHECK_THROWS_AS(vvmf::table_coeff(t, 0, mpq_class(1, 2)), std::domain_error);
    CHECK_THROWS_AS(vvmf::table_coeff(t, 0, 6), std::domain_error);  // beyond truncation
}

TEST_CASE("best rational approximation") {
    CHECK(vvmf::best_rational(1.0 / 3.0, 10) == mpq_class(1, 3));
    CHECK(vvmf::best_rational(3.14159265358979, 113) == mpq_class(355, 113));
    CHECK(vvmf::best_rational(0.4999999, 1) == 0);
    CHECK(vvmf::best_rational(-2.5000001, 2) == mpq_class(-5, 2));
    CHECK(vvmf::best_rational(7.0, 100) == 7);
}

TEST_CASE("rationalize snaps within its tolerance") {
    DiscriminantForm df = trivial_df();
    FourierTableF tf;
    tf.k = 12;
    tf.df = df;
    tf.N = 2;
    tf.c[CoeffKey{0, mpq_class(0)}] = 1.0;
    tf.err[CoeffKey{0, mpq_class(0)}] = 0.0;
    tf.c[CoeffKey{0, mpq_class(1)}] = vvmf::to_double(mpq_class(65520, 691)) + 1e-7;
    tf.err[CoeffKey{0, mpq_class(1)}] = 1e-7;
    tf.c[CoeffKey{0, mpq_class(2)}] = vvmf::to_double(mpq_class(65520, 691) * 2049) - 2e-7;
    tf.err[CoeffKey{0, mpq_class(2)}] = 1e-7;

    mpz_class d;
    FourierTable t = vvmf::rationalize(tf, 10000, &d);
    CHECK(d == 691);
    CHECK(vvmf::table_coeff(t, 0, 1) == mpq_class(65520, 691));
    CHECK(vvmf::table_coeff(t, 0, 2) == mpq_class(65520, 691) * 2049);
    CHECK(vvmf::table_coeff(t, 0, 0) == 1);
}

TEST_CASE("rationalize fails loudly") {
    DiscriminantForm df = trivial_df();

    // error bar much smaller than the distance to any nearby rational
    FourierTableF far;
    far.k = 4;
    far.df = df;
    far.N = 1;
    far.c[CoeffKey{0, mpq_class(1)}] = 0.3333;  // 1/3 is 3.3e-5 away
    far.err[CoeffKey{0, mpq_class(1)}] = 1e-9;
    mpz_class d;
    CHECK_THROWS_AS(vvmf::rationalize(far, 10, &d), std::runtime_error);

    // error bar so large that several candidates fit
    FourierTableF wide;
    wide.k = 4;
    wide.df = df;
    wide.N = 1;
    wide.c[CoeffKey{0, mpq_class(1)}] = 0.509;
    wide.err[CoeffKey{0, mpq_class(1)}] = 0.2;
    CHECK_THROWS_AS(vvmf::rationalize(wide, 10, &d), std::runtime_error);
}

TEST_CASE("json round trips") {
    DiscriminantForm df = example_df();
    DiscriminantForm back = vvmf::df_from_json_text(vvmf::df_to_json(df));
    CHECK(back.orders == df.orders);
    CHECK(back.q_gram.a == df.q_gram.a);
    CHECK(back.level == df.level);

    FourierTable t;
    t.k = mpq_class(5, 2);
    t.df = df;
    t.N = 2;
    t.cusp = false;
    std::vector<CoeffKey> keys = vvmf::table_support(df, 2);
    long v = 1;
    for (const CoeffKey& k : keys) t.c[k] = vvmf::make_rat(v++, 3);
    FourierTable t2 = vvmf::table_from_json_text(vvmf::table_to_json(t));
    CHECK(t2.k == t.k);
    CHECK(t2.N == t.N);
    CHECK(t2.c == t.c);

    vvmf::BasisTable b;
    b.k = 12;
    b.df = trivial_df();
    b.N = 3;
    b.cusp = true;
    b.names = {"Delta"};
    FourierTable f;
    f.k = 12;
    f.df = b.df;
    f.N = 3;
    f.cusp = true;
    f.c[CoeffKey{0, mpq_class(1)}] = 1;
    f.c[CoeffKey{0, mpq_class(2)}] = -24;
    f.c[CoeffKey{0, mpq_class(3)}] = 252;
    b.forms = {f};
    vvmf::BasisTable b2 = vvmf::basis_from_json_text(vvmf::basis_to_json(b));
    CHECK(b2.names == b.names);
    CHECK(b2.cusp);
    CHECK(b2.forms.size() == 1);
    CHECK(b2.forms[0].c == f.c);

    vvmf::PrincipalPart p;
    p.df = trivial_df();
    p.depth = 2;
    p.c[CoeffKey{0, mpq_class(-1)}] = 24;
    p.c[CoeffKey{0, mpq_class(-2)}] = 1;
    vvmf::PrincipalPart p2 = vvmf::ppart_from_json_text(vvmf::ppart_to_json(p));
    CHECK(p2.depth == 2);
    CHECK(p2.c == p.c);
}

TEST_CASE("malformed tables are rejected") {
    // positive exponent in a principal part
    CHECK_THROWS_AS(vvmf::ppart_from_json_text(R"({"df":{"orders":[],"q_gram":[]},
        "terms":[{"alpha":[],"n":"1","c":"1"}]})"),
                    std::domain_error);
    // exponent incompatible with the component offset
    CHECK_THROWS_AS(vvmf::table_from_json_text(R"({"k":"12","df":{"orders":[],"q_gram":[]},
        "N":3,"cusp":false,"coeffs":[{"alpha":[],"n":"1/2","c":"1"}]})"),
                    std::domain_error);
}

TEST_CASE("table evaluation is the truncated expansion") {
    FourierTableF t;
    t.k = 12;
    t.df = trivial_df();
    t.N = 1;
    t.c[CoeffKey{0, mpq_class(0)}] = 0.0;
    t.c[CoeffKey{0, mpq_class(1)}] = 1.0;
    std::complex<double> tau(0.3, 1.1);
    std::complex<double> q = std::exp(std::complex<double>(0, 2 * M_PI) * tau);
    CHECK(std::abs(vvmf::eval_table_component(t, 0, tau) - q) < 1e-14);
}
