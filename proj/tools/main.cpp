// vvmf: command-line frontend for the vector-valued modular form pipeline.
//
// Subcommands:
//   lattice-info  inspect a lattice and its discriminant form
//   weil-matrix   exact representation matrix of one metaplectic element
//   eisenstein    Fourier coefficients of the Eisenstein series, rationalized
//   obstruct      pair a polar tail against a cusp basis
//   congruence    solve for a cusp form congruent to d * E modulo d
//   selftest      end-to-end checks on built-in fixtures
//
// Exit codes: 0 success, 1 domain/computation error, 2 usage error.

#include <complex>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "vvmf/congruence.hpp"
#include "vvmf/cyclotomic.hpp"
#include "vvmf/eisenstein.hpp"
#include "vvmf/fourier.hpp"
#include "vvmf/intmat.hpp"
#include "vvmf/lattice.hpp"
#include "vvmf/metaplectic.hpp"
#include "vvmf/rat.hpp"
#include "vvmf/weil.hpp"

using json = nlohmann::ordered_json;

namespace {

vvmf::ZMat gram_from_file(const std::string& path) {
    json j = json::parse(vvmf::read_text_file(path));
    if (!j.contains("gram")) throw std::domain_error(path + ": missing \"gram\"");
    const auto& rows = j["gram"];
    long n = static_cast<long>(rows.size());
    if (n == 0) throw std::domain_error(path + ": empty Gram matrix");
    vvmf::ZMat g(n, n);
    for (long i = 0; i < n; ++i) {
        if (static_cast<long>(rows[i].size()) != n)
            throw std::domain_error(path + ": Gram matrix is not square");
        for (long jx = 0; jx < n; ++jx) {
            const auto& cell = rows[i][jx];
            if (cell.is_number_integer())
                g.at(i, jx) = mpz_class(cell.get<long>());
            else
                g.at(i, jx) = mpz_class(cell.get<std::string>());
        }
    }
    return g;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty())
        std::cout << text << "\n";
    else
        vvmf::write_text_file(out_path, text + "\n");
}

// Weight of the series attached to a signature (2, l) lattice.
mpq_class pipeline_weight(const vvmf::Lattice& lat) {
    if (!lat.pipeline_shape)
        throw std::domain_error(
            "lattice does not have signature (2, l) with l >= 3; pass --k explicitly "
            "with --df input if you want a bare discriminant-form computation");
    return 1 + mpq_class(lat.sig_neg, 2);
}

int cmd_lattice_info(const std::string& gram_path) {
    vvmf::Lattice lat = vvmf::validate_lattice(gram_from_file(gram_path));
    vvmf::DiscriminantForm df = vvmf::discriminant_form(lat);
    vvmf::Cyclo g = vvmf::gauss_sum(df);
    std::cout << "rank:      " << lat.rank << "\n";
    std::cout << "signature: (" << lat.sig_pos << "," << lat.sig_neg << ")\n";
    std::cout << "|L'/L|:    " << df.size.get_str() << "\n";
    std::cout << "level:     " << df.level << "\n";
    std::cout << vvmf::df_describe(df);
    std::complex<double> gf = g.embed();
    std::cout << "gauss sum: " << g.str() << "  ~ (" << gf.real() << ", " << gf.imag()
              << ")\n";
    std::cout << "signature test (gauss sum vs sqrt(|A|) e(sig/8)): "
              << (vvmf::milgram_check(lat) ? "ok" : "MISMATCH") << "\n";
    return 0;
}

int cmd_weil_matrix(const std::string& gram_path, const std::vector<long>& mat, int eps) {
    vvmf::Lattice lat = vvmf::validate_lattice(gram_from_file(gram_path));
    vvmf::DiscriminantForm df = vvmf::discriminant_form(lat);
    vvmf::MetaplecticElement g;
    g.a = mat[0];
    g.b = mat[1];
    g.c = mat[2];
    g.d = mat[3];
    g.eps = eps;
    if (g.a * g.d - g.b * g.c != 1) throw std::domain_error("matrix is not in SL_2(Z)");
    vvmf::WeilMatrix m = vvmf::rho(df, g);

    json out;
    out["dim"] = m.dim;
    out["element"] = {{"a", g.a.get_str()},
                      {"b", g.b.get_str()},
                      {"c", g.c.get_str()},
                      {"d", g.d.get_str()},
                      {"eps", g.eps}};
    json rows = json::array();
    json frows = json::array();
    for (long i = 0; i < m.dim; ++i) {
        json row = json::array();
        json frow = json::array();
        for (long j = 0; j < m.dim; ++j) {
            const vvmf::Cyclo& e = m.at(i, j);
            json entry;
            entry["M"] = e.modulus();
            json coeffs = json::array();
            for (const mpq_class& c : e.power_basis_coeffs()) coeffs.push_back(vvmf::rat_str(c));
            entry["coeffs"] = coeffs;
            row.push_back(entry);
            std::complex<double> z = e.embed();
            frow.push_back(json::array({z.real(), z.imag()}));
        }
        rows.push_back(row);
        frows.push_back(frow);
    }
    out["entries"] = rows;
    out["float"] = frows;
    std::cout << out.dump(2) << "\n";
    return 0;
}

struct EisArgs {
    std::string gram_path, df_path, k_str;
    long N = 10;
    std::string C_str = "auto";
    long samples = 0;
    std::string method = "auto";
    std::string max_den_str = "100000";
    double tol = 1e-8;
    int threads = 0;
    std::string out_path;
    bool raw = false;
};

int cmd_eisenstein(const EisArgs& a) {
    vvmf::DiscriminantForm df;
    mpq_class k;
    if (!a.gram_path.empty()) {
        vvmf::Lattice lat = vvmf::validate_lattice(gram_from_file(a.gram_path));
        df = vvmf::discriminant_form(lat);
        k = a.k_str.empty() ? pipeline_weight(lat) : vvmf::parse_rat(a.k_str);
    } else if (!a.df_path.empty()) {
        df = vvmf::df_from_json_text(vvmf::read_text_file(a.df_path));
        if (a.k_str.empty())
            throw std::domain_error("--df input requires an explicit --k weight");
        k = vvmf::parse_rat(a.k_str);
    } else {
        throw std::domain_error("eisenstein: provide --gram or --df");
    }

    vvmf::EisOptions opt;
    opt.C = a.C_str == "auto" ? 0 : std::stol(a.C_str);
    opt.samples = a.samples;
    opt.method = a.method;
    opt.tol = a.tol;
    opt.threads = vvmf::resolve_thread_count(a.threads);
    vvmf::FourierTableF tf = vvmf::fourier_coeffs_E(df, k, a.N, opt);

    if (a.raw) {
        json out;
        out["k"] = vvmf::rat_str(k);
        out["N"] = a.N;
        json coeffs = json::array();
        for (const auto& [key, val] : tf.c) {
            json e;
            e["alpha"] = json::array();
            for (long c : vvmf::df_unrank(df, key.alpha).coords) e["alpha"].push_back(c);
            e["n"] = vvmf::rat_str(key.n);
            e["value"] = val;
            e["err"] = tf.err.at(key);
            coeffs.push_back(e);
        }
        out["coeffs"] = coeffs;
        emit(out.dump(2), a.out_path);
        return 0;
    }

    mpz_class den;
    vvmf::FourierTable t = vvmf::rationalize(tf, mpz_class(a.max_den_str), &den);
    std::cerr << "common denominator: " << den.get_str() << "\n";
    emit(vvmf::table_to_json(t), a.out_path);
    return 0;
}

int cmd_obstruct(const std::string& ppart_path, const std::string& cusps_path,
                 const std::string& e_path, long enorm) {
    vvmf::PrincipalPart p = vvmf::ppart_from_json_text(vvmf::read_text_file(ppart_path));
    vvmf::BasisTable cusps = vvmf::basis_from_json_text(vvmf::read_text_file(cusps_path));
    vvmf::ObstructionReport rep = vvmf::obstruction_check(p, cusps);
    json out;
    out["admissible"] = rep.admissible;
    if (!rep.admissible) out["witness"] = rep.witness;
    if (rep.admissible && !e_path.empty()) {
        vvmf::FourierTable E = vvmf::table_from_json_text(vvmf::read_text_file(e_path));
        out["constant_term"] = vvmf::rat_str(vvmf::constant_term(p, E, enorm));
    }
    std::cout << out.dump(2) << "\n";
    return rep.admissible ? 0 : 1;
}

int cmd_congruence(const std::string& e_path, const std::string& d_str,
                   const std::string& cusps_path, long N, const std::string& out_path) {
    vvmf::FourierTable E = vvmf::table_from_json_text(vvmf::read_text_file(e_path));
    vvmf::BasisTable cusps = vvmf::basis_from_json_text(vvmf::read_text_file(cusps_path));
    vvmf::CongruenceSolution sol = vvmf::congruence_solve(E, mpz_class(d_str), cusps, N);
    json out;
    out["d"] = sol.d.get_str();
    out["N"] = sol.N;
    json combo = json::array();
    for (const mpz_class& x : sol.combo) combo.push_back(x.get_str());
    out["combo"] = combo;
    out["f"] = json::parse(vvmf::table_to_json(sol.f));
    emit(out.dump(2), out_path);
    return 0;
}

// --- selftest fixtures -----------------------------------------------------

// Coefficients 1..N of the weight-12 discriminant cusp form
// q prod_{n>=1} (1 - q^n)^24, by exact truncated products.
std::vector<mpz_class> discriminant_cusp_coeffs(long N) {
    std::vector<mpz_class> p(N, 0);
    p[0] = 1;
    for (long n = 1; n < N; ++n)
        for (int rep = 0; rep < 24; ++rep)
            for (long j = N - 1; j >= n; --j) p[j] -= p[j - n];
    std::vector<mpz_class> out(N + 1, 0);
    for (long j = 1; j <= N; ++j) out[j] = p[j - 1];
    return out;
}

vvmf::BasisTable discriminant_basis(long N) {
    vvmf::BasisTable b;
    b.k = 12;
    b.df = vvmf::df_from_parts({}, vvmf::QMat(0, 0));
    b.N = N;
    b.cusp = true;
    b.names = {"Delta"};
    vvmf::FourierTable f;
    f.k = 12;
    f.df = b.df;
    f.N = N;
    f.cusp = true;
    std::vector<mpz_class> tau = discriminant_cusp_coeffs(N);
    for (long n = 1; n <= N; ++n) f.c[vvmf::CoeffKey{0, mpq_class(n)}] = tau[n];
    b.forms = {f};
    return b;
}

int cmd_selftest(bool quick) {
    // 1) Signature formula on a random corpus of even lattices.
    std::mt19937_64 rng(20260815);
    const int corpus = quick ? 20 : 60;
    int done = 0;
    long attempts = 0;
    while (done < corpus) {
        if (++attempts > 100000) throw std::logic_error("selftest: corpus generation stalled");
        long n = 1 + static_cast<long>(rng() % 5);
        vvmf::ZMat g(n, n);
        for (long i = 0; i < n; ++i) {
            for (long j = i; j < n; ++j) {
                long v = static_cast<long>(rng() % 7) - 3;
                g.at(i, j) = v;
                g.at(j, i) = v;
            }
            g.at(i, i) = 2 * (static_cast<long>(rng() % 5) - 2);
        }
        mpz_class det = vvmf::det_bareiss(g);
        if (det == 0 || abs(det) > 300) continue;
        vvmf::Lattice lat = vvmf::validate_lattice(g);
        if (!vvmf::milgram_check(lat))
            throw std::logic_error("selftest: signature formula failed on a random lattice");
        ++done;
    }
    std::cout << "selftest: gauss-sum/signature corpus ok (" << done << " lattices)\n";

    // 2) Representation well-definedness: the matrix assigned to a word equals
    //    the matrix assigned to the element the word multiplies out to.
    std::vector<vvmf::ZMat> grams;
    {
        vvmf::ZMat g1(1, 1);
        g1.at(0, 0) = 2;
        grams.push_back(g1);
        vvmf::ZMat g2(2, 2);
        g2.at(0, 0) = 2;
        g2.at(0, 1) = 1;
        g2.at(1, 0) = 1;
        g2.at(1, 1) = 2;
        grams.push_back(g2);
        vvmf::ZMat g3(2, 2);
        g3.at(0, 0) = 2;
        g3.at(0, 1) = 0;
        g3.at(1, 0) = 0;
        g3.at(1, 1) = -2;
        grams.push_back(g3);
    }
    for (const vvmf::ZMat& g : grams) {
        vvmf::DiscriminantForm df = vvmf::discriminant_form(vvmf::validate_lattice(g));
        for (int trial = 0; trial < (quick ? 4 : 10); ++trial) {
            vvmf::Word w;
            long len = 2 + static_cast<long>(rng() % 9);
            for (long i = 0; i < len; ++i) {
                if (rng() % 2)
                    w.push_back({vvmf::Gen::T, static_cast<long>(rng() % 7) - 3});
                else
                    w.push_back({vvmf::Gen::S, static_cast<long>(rng() % 3) + 1});
            }
            vvmf::WeilMatrix direct = vvmf::rho_word(df, w);
            vvmf::WeilMatrix via_elem = vvmf::rho(df, vvmf::mp_eval_word(w));
            if (!vvmf::wm_eq(direct, via_elem))
                throw std::logic_error("selftest: representation not well defined on a word");
        }
    }
    std::cout << "selftest: representation well-definedness ok\n";

    // 3) End-to-end congruence fixture: rank-0 discriminant form, weight 12.
    //    Denominator reconstruction runs on the first coefficients only: the
    //    later ones grow like n^11, past what a double-precision table can pin
    //    down to a denominator-691 rational.  The deep exact table extends the
    //    reconstructed ratio by divisor sums and is cross-checked against the
    //    numeric series within its recorded error bars.
    vvmf::DiscriminantForm trivial = vvmf::df_from_parts({}, vvmf::QMat(0, 0));
    vvmf::EisOptions opt;
    opt.threads = vvmf::resolve_thread_count(0);
    const long N = 10;
    vvmf::FourierTableF shallow = vvmf::fourier_coeffs_E(trivial, 12, 2, opt);
    mpz_class den;
    vvmf::FourierTable head = vvmf::rationalize(shallow, 10000, &den);
    if (den != 691) throw std::logic_error("selftest: expected common denominator 691");
    mpq_class ratio = vvmf::table_coeff(head, 0, 1);  // c(E,0,0) = 1
    vvmf::FourierTable E;
    E.k = 12;
    E.df = trivial;
    E.N = N;
    E.c[vvmf::CoeffKey{0, mpq_class(0)}] = 1;
    for (long n = 1; n <= N; ++n) {
        mpz_class s = 0;
        for (long d = 1; d <= n; ++d) {
            if (n % d != 0) continue;
            mpz_class dp;
            mpz_ui_pow_ui(dp.get_mpz_t(), static_cast<unsigned long>(d), 11);
            s += dp;
        }
        E.c[vvmf::CoeffKey{0, mpq_class(n)}] = ratio * mpq_class(s);
    }
    if (vvmf::table_coeff(E, 0, 2) != vvmf::table_coeff(head, 0, 2))
        throw std::logic_error("selftest: divisor-sum extension disagrees with reconstruction");
    vvmf::FourierTableF deep = vvmf::fourier_coeffs_E(trivial, 12, N, opt);
    for (const auto& [key, val] : deep.c) {
        double exact = vvmf::to_double(vvmf::table_coeff(E, key.alpha, key.n));
        if (std::fabs(val - exact) > 10 * deep.err.at(key) + 1e-9 * (1 + std::fabs(exact)))
            throw std::logic_error("selftest: numeric series strays from the exact table");
    }
    vvmf::BasisTable cusps = discriminant_basis(N);
    vvmf::CongruenceSolution sol = vvmf::congruence_solve(E, 691, cusps, N);
    if (sol.combo.size() != 1 || sol.combo[0] != 65520 % 691)
        throw std::logic_error("selftest: unexpected congruence solution");
    std::cout << "selftest: weight-12 congruence fixture ok (x = " << sol.combo[0].get_str()
              << " mod 691)\n";
    std::cout << "selftest: all ok\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"vector-valued modular form pipeline"};
    app.require_subcommand(1);

    std::string gram_path, df_path, e_path, ppart_path, cusps_path, out_path;

    auto* info = app.add_subcommand("lattice-info", "inspect a lattice / discriminant form");
    info->add_option("--gram", gram_path, "lattice JSON file {\"gram\": [[...]]}")
        ->required();

    auto* wm = app.add_subcommand("weil-matrix", "exact representation matrix");
    std::vector<long> mat = {0, -1, 1, 0};
    int eps = 0;
    wm->add_option("--gram", gram_path, "lattice JSON file")->required();
    wm->add_option("--mat", mat, "entries a b c d (default: S)")->expected(4);
    wm->add_option("--eps", eps, "branch bit of the lift (0 or 1)")
        ->check(CLI::Range(0, 1));

    EisArgs ea;
    auto* eis = app.add_subcommand("eisenstein", "Fourier coefficients of E");
    eis->add_option("--gram", ea.gram_path, "lattice JSON file");
    eis->add_option("--df", ea.df_path, "discriminant form JSON file");
    eis->add_option("--k", ea.k_str, "weight (rational, e.g. 5/2); default 1 + l/2");
    eis->add_option("--N", ea.N, "exponent truncation")->required()->check(CLI::PositiveNumber);
    eis->add_option("--C", ea.C_str, "layer count, integer or 'auto'");
    eis->add_option("--samples", ea.samples, "dft sample count (0 = automatic)");
    eis->add_option("--method", ea.method, "auto | unfold | dft");
    eis->add_option("--max-den", ea.max_den_str, "rationalization denominator bound");
    eis->add_option("--tol", ea.tol, "adaptive tolerance")->check(CLI::Range(1e-15, 1e-2));
    eis->add_option("--threads", ea.threads, "worker threads (0 = VVMF_THREADS or 1)");
    eis->add_option("--out", ea.out_path, "output file (default stdout)");
    eis->add_flag("--raw", ea.raw, "emit the numeric table with error bars instead");

    long enorm = 2;
    auto* ob = app.add_subcommand("obstruct", "pair a polar tail against a cusp basis");
    ob->add_option("--ppart", ppart_path, "principal part JSON file")->required();
    ob->add_option("--cusps", cusps_path, "cusp basis JSON file")->required();
    ob->add_option("--E", e_path, "Eisenstein table JSON, to also print the constant term");
    ob->add_option("--enorm", enorm, "constant-coefficient normalization tag (1 or 2)")
        ->check(CLI::Range(1L, 2L));

    std::string d_str = "1";
    long cong_N = 10;
    auto* cong = app.add_subcommand("congruence", "cusp form congruent to d * E mod d");
    cong->add_option("--E", e_path, "Eisenstein table JSON file")->required();
    cong->add_option("--d", d_str, "modulus (the common denominator of E)")->required();
    cong->add_option("--cusps", cusps_path, "cusp basis JSON file")->required();
    cong->add_option("--N", cong_N, "verify exponents up to N")->required();
    cong->add_option("--out", out_path, "output file (default stdout)");

    bool quick = false;
    auto* st = app.add_subcommand("selftest", "run built-in end-to-end checks");
    st->add_flag("--quick", quick, "smaller corpus");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (info->parsed()) return cmd_lattice_info(gram_path);
        if (wm->parsed()) return cmd_weil_matrix(gram_path, mat, eps);
        if (eis->parsed()) return cmd_eisenstein(ea);
        if (ob->parsed()) return cmd_obstruct(ppart_path, cusps_path, e_path, enorm);
        if (cong->parsed()) return cmd_congruence(e_path, d_str, cusps_path, cong_N, out_path);
        if (st->parsed()) return cmd_selftest(quick);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
