#include "vvmf/lattice.hpp"

#include <sstream>
#include <stdexcept>

#include "vvmf/rat.hpp"

namespace vvmf {

Lattice validate_lattice(const ZMat& gram) {
    if (gram.rows != gram.cols) throw std::domain_error("validate_lattice: matrix not square");
    if (gram.rows == 0) throw std::domain_error("validate_lattice: empty matrix");
    for (long i = 0; i < gram.rows; ++i) {
        for (long j = i + 1; j < gram.cols; ++j)
            if (gram.at(i, j) != gram.at(j, i))
                throw std::domain_error("validate_lattice: matrix not symmetric");
        if (gram.at(i, i) % 2 != 0)
            throw std::domain_error("validate_lattice: odd diagonal entry (lattice not even)");
    }
    if (det_bareiss(gram) == 0) throw std::domain_error("validate_lattice: singular Gram matrix");
    Inertia in = symmetric_inertia(gram);
    Lattice lat;
    lat.gram = gram;
    lat.rank = gram.rows;
    lat.sig_pos = in.pos;
    lat.sig_neg = in.neg;
    lat.pipeline_shape = (in.pos == 2 && in.neg >= 3);
    return lat;
}

namespace {

long lcm_den(long acc, const mpq_class& q) {
    mpz_class d = q.get_den();
    if (!d.fits_slong_p()) throw std::overflow_error("discriminant form level overflows long");
    return lcm_long(acc, d.get_si());
}

void validate_df(const DiscriminantForm& df) {
    const long k = static_cast<long>(df.orders.size());
    if (df.q_gram.rows != k || df.q_gram.cols != k)
        throw std::domain_error("discriminant form: table shape mismatch");
    for (long i = 0; i < k; ++i) {
        if (df.orders[i] < 2) throw std::domain_error("discriminant form: order < 2");
        if (i + 1 < k && df.orders[i + 1] % df.orders[i] != 0)
            throw std::domain_error("discriminant form: divisibility chain violated");
        // d_i^2 q(g_i) in Z (d_i g_i is a lattice vector, q integral on L) and
        // 2 d_i q(g_i) in Z ((g_i, d_i g_i) integral).
        mpq_class qi = df.q_gram.at(i, i);
        if (mpq_class(qi * df.orders[i] * df.orders[i]).get_den() != 1 ||
            mpq_class(qi * 2 * df.orders[i]).get_den() != 1)
            throw std::domain_error("discriminant form: q value incompatible with order");
        for (long j = 0; j < k; ++j) {
            if (j == i) continue;
            if (df.q_gram.at(i, j) != df.q_gram.at(j, i))
                throw std::domain_error("discriminant form: table not symmetric");
            if (mpq_class(df.q_gram.at(i, j) * df.orders[i]).get_den() != 1)
                throw std::domain_error("discriminant form: pairing incompatible with order");
        }
    }
}

}  // namespace

DiscriminantForm discriminant_form(const Lattice& lat) {
    SmithDecomposition snf = smith_normal_form(lat.gram);
    const long n = lat.rank;
    std::vector<long> gen_idx;
    DiscriminantForm df;
    for (long i = 0; i < n; ++i) {
        mpz_class d = snf.D.at(i, i);
        if (d == 0) throw std::domain_error("discriminant_form: singular Gram matrix");
        if (d == 1) continue;
        if (!d.fits_slong_p()) throw std::overflow_error("discriminant_form: huge divisor");
        df.orders.push_back(d.get_si());
        gen_idx.push_back(i);
        df.size *= d;
    }
    const long k = static_cast<long>(df.orders.size());
    // Generators g_i = V.col(gen_idx[i]) / d_i; pairings via the Gram matrix.
    df.q_gram = QMat(k, k);
    for (long i = 0; i < k; ++i)
        for (long j = i; j < k; ++j) {
            mpz_class dot = 0;
            for (long r = 0; r < n; ++r)
                for (long c = 0; c < n; ++c)
                    dot += snf.V.at(r, gen_idx[i]) * lat.gram.at(r, c) * snf.V.at(c, gen_idx[j]);
            mpq_class val = make_rat(dot, mpz_class(df.orders[i]) * df.orders[j]);
            if (i == j) val /= 2;  // q(g_i) = (g_i, g_i)/2
            val = mod1(val);
            df.q_gram.at(i, j) = val;
            df.q_gram.at(j, i) = val;
        }
    df.level = 1;
    for (long i = 0; i < k; ++i)
        for (long j = 0; j < k; ++j) df.level = lcm_den(df.level, df.q_gram.at(i, j));
    validate_df(df);
    mpz_class det = det_bareiss(lat.gram);
    if (df.size != abs(det))
        throw std::logic_error("discriminant_form: group order does not match |det|");
    return df;
}

DiscriminantForm df_from_parts(const std::vector<long>& orders, const QMat& q_gram) {
    DiscriminantForm df;
    df.orders = orders;
    df.q_gram = q_gram;
    const long k = static_cast<long>(orders.size());
    for (long i = 0; i < k; ++i) {
        df.size *= orders[i];
        for (long j = 0; j < k; ++j) {
            df.q_gram.at(i, j) = mod1(df.q_gram.at(i, j));
            df.level = lcm_den(df.level, df.q_gram.at(i, j));
        }
    }
    validate_df(df);
    return df;
}

DfElement df_zero(const DiscriminantForm& df) {
    DfElement a;
    a.coords.assign(df.orders.size(), 0);
    return a;
}

DfElement df_normalize(const DiscriminantForm& df, std::vector<long> coords) {
    if (coords.size() != df.orders.size())
        throw std::domain_error("df element: coordinate count mismatch");
    for (size_t i = 0; i < coords.size(); ++i) {
        coords[i] %= df.orders[i];
        if (coords[i] < 0) coords[i] += df.orders[i];
    }
    return DfElement{std::move(coords)};
}

DfElement df_add(const DiscriminantForm& df, const DfElement& a, const DfElement& b) {
    std::vector<long> c(a.coords.size());
    for (size_t i = 0; i < c.size(); ++i) c[i] = a.coords[i] + b.coords[i];
    return df_normalize(df, std::move(c));
}

DfElement df_neg(const DiscriminantForm& df, const DfElement& a) {
    std::vector<long> c(a.coords.size());
    for (size_t i = 0; i < c.size(); ++i) c[i] = -a.coords[i];
    return df_normalize(df, std::move(c));
}

long df_size_long(const DiscriminantForm& df) {
    if (!df.size.fits_slong_p()) throw std::overflow_error("|L'/L| overflows long");
    return df.size.get_si();
}

DfElement df_unrank(const DiscriminantForm& df, long idx) {
    DfElement a = df_zero(df);
    for (size_t i = 0; i < df.orders.size(); ++i) {
        a.coords[i] = idx % df.orders[i];
        idx /= df.orders[i];
    }
    if (idx != 0) throw std::domain_error("df_unrank: index out of range");
    return a;
}

long df_rank(const DiscriminantForm& df, const DfElement& a) {
    long idx = 0;
    for (size_t i = df.orders.size(); i-- > 0;) idx = idx * df.orders[i] + a.coords[i];
    return idx;
}

mpq_class qvalue(const DiscriminantForm& df, const DfElement& a) {
    mpq_class s = 0;
    const long k = static_cast<long>(df.orders.size());
    for (long i = 0; i < k; ++i) {
        s += mpq_class(a.coords[i]) * a.coords[i] * df.q_gram.at(i, i);
        for (long j = i + 1; j < k; ++j)
            s += mpq_class(a.coords[i]) * a.coords[j] * df.q_gram.at(i, j);
    }
    return mod1(s);
}

mpq_class bilinear(const DiscriminantForm& df, const DfElement& a, const DfElement& b) {
    mpq_class s = 0;
    const long k = static_cast<long>(df.orders.size());
    for (long i = 0; i < k; ++i)
        for (long j = 0; j < k; ++j) {
            mpq_class g = (i == j) ? mpq_class(2 * df.q_gram.at(i, i)) : df.q_gram.at(i, j);
            s += mpq_class(a.coords[i]) * b.coords[j] * g;
        }
    return mod1(s);
}

Cyclo gauss_sum(const DiscriminantForm& df) {
    const long sz = df_size_long(df);
    Cyclo g;
    for (long idx = 0; idx < sz; ++idx) g += Cyclo::unit_phase(qvalue(df, df_unrank(df, idx)));
    return g.lifted(lcm_long(g.modulus(), lcm_long(df.level, 8)));
}

Cyclo milgram_target(const Lattice& lat) {
    DiscriminantForm df = discriminant_form(lat);
    long sig = lat.sig_pos - lat.sig_neg;
    return cyclo_sqrt(df.size) * Cyclo::unit_phase(make_rat(sig, 8));
}

bool milgram_check(const Lattice& lat) {
    return gauss_sum(discriminant_form(lat)) == milgram_target(lat);
}

std::string df_describe(const DiscriminantForm& df) {
    std::ostringstream os;
    os << "orders:";
    if (df.orders.empty()) os << " (trivial)";
    for (long d : df.orders) os << " " << d;
    os << "\nsize: " << df.size.get_str() << "\nlevel: " << df.level << "\n";
    const long k = static_cast<long>(df.orders.size());
    for (long i = 0; i < k; ++i) {
        os << (i == 0 ? "q/b table: " : "           ");
        for (long j = 0; j < k; ++j) os << rat_str(df.q_gram.at(i, j)) << (j + 1 < k ? " " : "");
        os << "\n";
    }
    return os.str();
}

}  // namespace vvmf
