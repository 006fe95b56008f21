#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <cstdlib>
#include <numeric>

#include "oracles.hpp"
#include "vvmf/eisenstein.hpp"
#include "vvmf/fourier.hpp"
#include "vvmf/lattice.hpp"
#include "vvmf/rat.hpp"

using vvmf::CoeffKey;
using vvmf::DiscriminantForm;
using vvmf::EisOptions;
using vvmf::FourierTableF;
using vvmf::ZMat;

namespace {

constexpr double kTwoPi = 2 * M_PI;

ZMat mat(long n, std::initializer_list<long> v) {
    ZMat m(n, n);
    auto it = v.begin();
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) m.at(i, j) = *it++;
    return m;
}

DiscriminantForm df_of(const ZMat& g) {
    return vvmf::discriminant_form(vvmf::validate_lattice(g));
}

DiscriminantForm trivial_df() { return vvmf::df_from_parts({}, vvmf::QMat(0, 0)); }

// closed-form right-hand side of the translate resummation:
// (2 pi)^k e^{-i pi k / 2} / Gamma(k) * sum_{nu > 0, nu = -theta mod 1}
//     nu^{k-1} e(nu tau)
std::complex<double> resummed(double k, const mpq_class& theta, std::complex<double> tau) {
    std::complex<double> pref = std::pow(kTwoPi, k) *
                                std::exp(std::complex<double>(0, -M_PI * k / 2)) /
                                std::tgamma(k);
    double nu0 = vvmf::to_double(vvmf::mod1(-theta));
    if (nu0 == 0) nu0 = 1;
    std::complex<double> s = 0;
    for (double nu = nu0; nu < 80; nu += 1)
        s += std::pow(nu, k - 1) * std::exp(std::complex<double>(0, kTwoPi * nu) * tau);
    return pref * s;
}

}  // namespace

TEST_CASE("translate resummation: direct sum vs closed form") {
    std::complex<double> tau(0.37, 1.1);
    struct Case {
        double k;
        mpq_class theta;
    };
    for (const Case& c : {Case{2.5, mpq_class(1, 4)}, Case{12.0, mpq_class(0)},
                          Case{3.5, mpq_class(2, 3)}, Case{4.0, mpq_class(1, 2)}}) {
        std::complex<double> lhs = oracle::lipschitz_lhs(c.k, c.theta, tau, 400000);
        std::complex<double> rhs = resummed(c.k, c.theta, tau);
        CHECK(std::abs(lhs - rhs) < 2e-7 * (1 + std::abs(rhs)));
    }
}

TEST_CASE("coset representatives") {
    std::vector<vvmf::MetaplecticElement> reps = vvmf::coset_reps(10);
    long expected = 1;
    for (long c = 1; c <= 10; ++c) {
        for (long d = 0; d < c; ++d)
            if (std::gcd(c, d) == 1) ++expected;
    }
    CHECK(static_cast<long>(reps.size()) == expected);  // 1 + sum phi(c) = 33
    CHECK(reps[0].c == 0);
    for (size_t i = 1; i < reps.size(); ++i) {
        CHECK(reps[i].c > 0);
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), reps[i].c.get_mpz_t(), reps[i].d.get_mpz_t());
        CHECK(g == 1);
    }
}

TEST_CASE("weight gate: small or incompatible weights are rejected") {
    CHECK_THROWS_AS(vvmf::eval_E(trivial_df(), 2, {0, 2.0}, 4), std::domain_error);
    CHECK_THROWS_AS(vvmf::eval_E(trivial_df(), mpq_class(5, 2), {0, 2.0}, 4),
                    std::domain_error);
    CHECK_THROWS_AS(vvmf::eval_E(trivial_df(), 11, {0, 2.0}, 4), std::domain_error);
    CHECK_THROWS_AS(vvmf::eval_E(df_of(mat(1, {2})), 3, {0, 2.0}, 4), std::domain_error);
    CHECK_THROWS_AS(vvmf::eval_E(trivial_df(), mpq_class(12), {0.1, -1.0}, 4),
                    std::domain_error);
}

TEST_CASE("point evaluation matches the brute coset box sum at equal depth") {
    struct Case {
        ZMat gram;
        mpq_class k;
        long C, D;
        double tol;
    };
    std::vector<Case> cases;
    cases.push_back({mat(1, {2}), mpq_class(7, 2), 3, 3000, 2e-6});
    cases.push_back({mat(2, {2, 1, 1, 2}), mpq_class(3), 3, 4000, 2e-6});
    cases.push_back({mat(2, {2, 0, 0, -2}), mpq_class(4), 2, 2000, 2e-6});
    std::complex<double> tau(0.23, 0.9);
    for (const Case& c : cases) {
        DiscriminantForm df = df_of(c.gram);
        std::vector<std::complex<double>> fast = vvmf::eval_E(df, c.k, tau, c.C);
        std::vector<std::complex<double>> slow =
            oracle::brute_E_layers(df, c.k, tau, c.C, c.D);
        REQUIRE(fast.size() == slow.size());
        for (size_t a = 0; a < fast.size(); ++a)
            CHECK(std::abs(fast[a] - slow[a]) < c.tol * (1 + std::abs(slow[a])));
    }
}

TEST_CASE("tail bound covers deeper truncations") {
    DiscriminantForm df = df_of(mat(1, {2}));
    std::complex<double> tau(0.1, 0.8);
    double tail8 = 0;
    std::vector<std::complex<double>> e8 = vvmf::eval_E(df, mpq_class(7, 2), tau, 8, &tail8);
    std::vector<std::complex<double>> e64 = vvmf::eval_E(df, mpq_class(7, 2), tau, 64);
    for (size_t a = 0; a < e8.size(); ++a) CHECK(std::abs(e8[a] - e64[a]) <= tail8);
}

TEST_CASE("classical coefficients, weight 12") {
    EisOptions opt;
    FourierTableF t = vvmf::fourier_coeffs_E(trivial_df(), 12, 8, opt);
    mpq_class ratio = oracle::eisenstein_ratio(12);
    CHECK(ratio == mpq_class(65520, 691));
    CHECK(t.c.at(CoeffKey{0, mpq_class(0)}) == 1.0);
    CHECK(t.err.at(CoeffKey{0, mpq_class(0)}) == 0.0);
    for (long n = 1; n <= 8; ++n) {
        double expect = vvmf::to_double(ratio * mpq_class(oracle::sigma(11, n)));
        double got = t.c.at(CoeffKey{0, mpq_class(n)});
        double err = t.err.at(CoeffKey{0, mpq_class(n)});
        CHECK(std::abs(got - expect) <= err);  // the error bar is honest
        CHECK(std::abs(got - expect) < 1e-6 * std::abs(expect));
        CHECK(err < 1e-4 * std::abs(expect));
    }
}

TEST_CASE("classical coefficients, weight 6") {
    EisOptions opt;
    FourierTableF t = vvmf::fourier_coeffs_E(trivial_df(), 6, 6, opt);
    mpq_class ratio = oracle::eisenstein_ratio(6);
    CHECK(ratio == -504);
    for (long n = 1; n <= 6; ++n) {
        double expect = vvmf::to_double(ratio * mpq_class(oracle::sigma(5, n)));
        double got = t.c.at(CoeffKey{0, mpq_class(n)});
        CHECK(std::abs(got - expect) <= t.err.at(CoeffKey{0, mpq_class(n)}));
        CHECK(std::abs(got - expect) < 1e-5 * std::abs(expect));
    }
}

TEST_CASE("constant coefficients are exact deltas") {
    DiscriminantForm df = df_of(mat(5, {2, 0, 0, 0, 0, 0, 2, 0, 0, 0, 0, 0, -2, 0, 0, 0, 0,
                                        0, -2, 0, 0, 0, 0, 0, -2}));
    EisOptions opt;
    opt.C = 128;  // depth is irrelevant for the exponent-zero rows
    FourierTableF t = vvmf::fourier_coeffs_E(df, mpq_class(5, 2), 1, opt);
    const long n = vvmf::df_size_long(df);
    for (long a = 0; a < n; ++a) {
        mpq_class off = vvmf::mod1(-vvmf::qvalue(df, vvmf::df_unrank(df, a)));
        if (off != 0) continue;
        CHECK(t.c.at(CoeffKey{a, mpq_class(0)}) == (a == 0 ? 1.0 : 0.0));
        CHECK(t.err.at(CoeffKey{a, mpq_class(0)}) == 0.0);
    }
}

TEST_CASE("identical results for any thread count") {
    DiscriminantForm df = df_of(mat(2, {2, 1, 1, 2}));
    EisOptions a;
    a.C = 256;
    a.threads = 1;
    EisOptions b = a;
    b.threads = 3;
    FourierTableF ta = vvmf::fourier_coeffs_E(df, 3, 4, a);
    FourierTableF tb = vvmf::fourier_coeffs_E(df, 3, 4, b);
    for (const auto& [key, val] : ta.c) {
        CHECK(val == tb.c.at(key));  // bitwise equality
        CHECK(ta.err.at(key) == tb.err.at(key));
    }
}

TEST_CASE("adaptive depth stops once layers are negligible") {
    EisOptions opt;  // weight 12 layers fall off like c^{-11}
    FourierTableF t = vvmf::fourier_coeffs_E(trivial_df(), 12, 4, opt);
    for (const auto& [key, e] : t.err) CHECK(e < 1e-9 * (1 + std::abs(t.c.at(key))));
}

TEST_CASE("sampling route agrees with the layered route at weight 12") {
    EisOptions dft;
    dft.method = "dft";
    FourierTableF a = vvmf::fourier_coeffs_E(trivial_df(), 12, 3, dft);
    EisOptions direct;
    FourierTableF b = vvmf::fourier_coeffs_E(trivial_df(), 12, 3, direct);
    for (const auto& [key, val] : b.c) {
        double gap = std::abs(a.c.at(key) - val);
        CHECK(gap <= a.err.at(key) + b.err.at(key) + 1e-9);
    }
}

TEST_CASE("sampling route reports useless error bars at half-integer weight") {
    // the x-line samples amplify the layer tail by e^{2 pi nu y}; at slowly
    // converging weights the honest error estimate exceeds the coefficient
    // spacing and rationalization refuses to snap
    DiscriminantForm df = df_of(mat(5, {2, 0, 0, 0, 0, 0, 2, 0, 0, 0, 0, 0, -2, 0, 0, 0, 0,
                                        0, -2, 0, 0, 0, 0, 0, -2}));
    EisOptions opt;
    opt.method = "dft";
    opt.C = 40;
    opt.samples = 64;
    FourierTableF t = vvmf::fourier_coeffs_E(df, mpq_class(5, 2), 2, opt);
    double worst = 0;
    for (const auto& [key, e] : t.err) worst = std::max(worst, e);
    CHECK(worst > 0.5);
    mpz_class d;
    CHECK_THROWS_AS(vvmf::rationalize(t, 1, &d), std::runtime_error);
}

TEST_CASE("unknown method named in the error") {
    CHECK_THROWS_AS(vvmf::fourier_coeffs_E(trivial_df(), 12, 2, {0, 1024, 0, "simpson"}),
                    std::domain_error);
}

TEST_CASE("thread count resolution") {
    CHECK(vvmf::resolve_thread_count(4) == 4);
    unsetenv("VVMF_THREADS");
    CHECK(vvmf::resolve_thread_count(0) == 1);
    setenv("VVMF_THREADS", "3", 1);
    CHECK(vvmf::resolve_thread_count(0) == 3);
    CHECK(vvmf::resolve_thread_count(2) == 2);
    unsetenv("VVMF_THREADS");
}
