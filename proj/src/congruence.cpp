#include "vvmf/congruence.hpp"

#include <stdexcept>

#include "vvmf/intmat.hpp"
#include "vvmf/rat.hpp"

namespace vvmf {

namespace {

// Support keys with strictly positive exponent up to N: the rows on which a
// cusp form is constrained.
std::vector<CoeffKey> positive_support(const DiscriminantForm& df, long N) {
    std::vector<CoeffKey> rows;
    for (const CoeffKey& key : table_support(df, N))
        if (key.n > 0) rows.push_back(key);
    return rows;
}

mpz_class require_integer(const mpq_class& v, const char* what) {
    if (v.get_den() != 1) throw std::domain_error(std::string(what) + " is not an integer");
    return v.get_num();
}

}  // namespace

mpq_class pairing(const PrincipalPart& p, const FourierTable& f) {
    if (!df_equal(p.df, f.df))
        throw std::domain_error("pairing: mismatched discriminant forms");
    if (p.depth > f.N)
        throw std::domain_error("pairing: table truncated below the tail depth");
    mpq_class total = 0;
    for (const auto& [key, a] : p.c) {
        mpq_class n = -key.n;  // key.n < 0
        total += mpq_class(a) * table_coeff(f, key.alpha, n);
    }
    return total;
}

ObstructionReport obstruction_check(const PrincipalPart& p, const BasisTable& cusps) {
    if (!cusps.cusp) throw std::domain_error("obstruction_check: basis is not a cusp basis");
    ObstructionReport rep;
    for (size_t i = 0; i < cusps.forms.size(); ++i) {
        if (pairing(p, cusps.forms[i]) != 0) {
            rep.admissible = false;
            rep.witness = i < cusps.names.size() ? cusps.names[i] : std::to_string(i);
            return rep;
        }
    }
    return rep;
}

mpq_class constant_term(const PrincipalPart& p, const FourierTable& E, long enorm) {
    if (!df_equal(p.df, E.df))
        throw std::domain_error("constant_term: mismatched discriminant forms");
    mpq_class c00 = table_coeff(E, 0, 0);
    if (c00 == 0) throw std::domain_error("constant_term: vanishing constant coefficient");
    mpq_class scale = mpq_class(enorm) / c00;
    mpq_class total = 0;
    for (const auto& [key, a] : p.c)
        total += mpq_class(a) * scale * table_coeff(E, key.alpha, -key.n);
    return -total / 2;
}

CongruenceSolution congruence_solve(const FourierTable& E, const mpz_class& d,
                                    const BasisTable& cusps, long N) {
    if (!df_equal(E.df, cusps.df))
        throw std::domain_error("congruence_solve: mismatched discriminant forms");
    if (E.k != cusps.k) throw std::domain_error("congruence_solve: mismatched weights");
    if (N > E.N || N > cusps.N)
        throw std::domain_error("congruence_solve: tables truncated below N");
    if (d <= 0) throw std::domain_error("congruence_solve: modulus must be positive");

    const std::vector<CoeffKey> rows = positive_support(E.df, N);
    const long R = static_cast<long>(rows.size());
    const long F = static_cast<long>(cusps.forms.size());

    ZMat A(R, F);
    std::vector<mpz_class> b(R);
    for (long i = 0; i < R; ++i) {
        for (long j = 0; j < F; ++j)
            A.at(i, j) = require_integer(
                table_coeff(cusps.forms[j], rows[i].alpha, rows[i].n), "basis coefficient");
        b[i] = require_integer(d * table_coeff(E, rows[i].alpha, rows[i].n),
                               "scaled target coefficient");
    }

    // U A V = D; with y = V^{-1} x the system becomes D y == U b (mod d).
    SmithDecomposition snf = smith_normal_form(A);
    std::vector<mpz_class> ub(R, 0);
    for (long i = 0; i < R; ++i)
        for (long j = 0; j < R; ++j) ub[i] += snf.U.at(i, j) * b[j];

    std::vector<mpz_class> y(F, 0);
    const long diag = std::min(R, F);
    for (long i = 0; i < R; ++i) {
        const mpz_class dii = i < diag ? snf.D.at(i, i) : mpz_class(0);
        if (dii == 0) {
            if (ub[i] % d != 0)
                throw std::domain_error("congruence_solve: no solution (inconsistent row)");
            continue;
        }
        // dii * y_i == ub_i (mod d)
        mpz_class g, s, t;
        mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), dii.get_mpz_t(),
                   d.get_mpz_t());
        if (ub[i] % g != 0)
            throw std::domain_error("congruence_solve: no solution (divisibility fails)");
        mpz_class rhs = ub[i] / g;
        mpz_class yi = s * rhs;
        mpz_class dd = d / g;
        mpz_fdiv_r(yi.get_mpz_t(), yi.get_mpz_t(), dd.get_mpz_t());
        y[i] = yi;
    }

    CongruenceSolution sol;
    sol.d = d;
    sol.N = N;
    sol.combo.assign(F, 0);
    for (long i = 0; i < F; ++i) {
        mpz_class xi = 0;
        for (long j = 0; j < F; ++j) xi += snf.V.at(i, j) * y[j];
        mpz_fdiv_r(xi.get_mpz_t(), xi.get_mpz_t(), d.get_mpz_t());
        sol.combo[i] = xi;
    }

    sol.f.k = E.k;
    sol.f.df = E.df;
    sol.f.N = N;
    sol.f.cusp = true;
    for (const CoeffKey& key : table_support(E.df, N)) {
        mpq_class v = 0;
        for (long j = 0; j < F; ++j)
            v += mpq_class(sol.combo[j]) * table_coeff(cusps.forms[j], key.alpha, key.n);
        if (v != 0) sol.f.c[key] = v;
    }

    for (long i = 0; i < R; ++i) {
        mpz_class fi = require_integer(table_coeff(sol.f, rows[i].alpha, rows[i].n),
                                       "combination coefficient");
        if ((fi - b[i]) % d != 0)
            throw std::logic_error("congruence_solve: verification failed");
    }
    return sol;
}

StabilizationReport stabilization_rank(const BasisTable& cusps, long N) {
    if (N > cusps.N)
        throw std::domain_error("stabilization_rank: basis truncated below N");
    const std::vector<CoeffKey> rows = positive_support(cusps.df, N);
    const long R = static_cast<long>(rows.size());
    const long F = static_cast<long>(cusps.forms.size());
    ZMat A(R, F);
    for (long i = 0; i < R; ++i) {
        mpz_class den = 1;
        std::vector<mpq_class> vals(F);
        for (long j = 0; j < F; ++j) {
            vals[j] = table_coeff(cusps.forms[j], rows[i].alpha, rows[i].n);
            mpz_class g;
            mpz_lcm(g.get_mpz_t(), den.get_mpz_t(), vals[j].get_den().get_mpz_t());
            den = g;
        }
        for (long j = 0; j < F; ++j) {
            mpq_class scaled = vals[j] * mpq_class(den);
            A.at(i, j) = scaled.get_num();
        }
    }
    StabilizationReport rep;
    rep.rank = rank_bareiss(A);
    rep.stable = rep.rank == F;
    return rep;
}

}  // namespace vvmf
