#include "vvmf/fourier.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "vvmf/rat.hpp"

namespace vvmf {

using nlohmann::ordered_json;

std::vector<CoeffKey> table_support(const DiscriminantForm& df, long N) {
    std::vector<CoeffKey> keys;
    const long sz = df_size_long(df);
    for (long a = 0; a < sz; ++a) {
        mpq_class off = mod1(-qvalue(df, df_unrank(df, a)));  // exponents in off + Z
        for (mpq_class nu = off; nu <= N; nu += 1) keys.push_back({a, nu});
    }
    return keys;
}

bool df_equal(const DiscriminantForm& a, const DiscriminantForm& b) {
    return a.orders == b.orders && a.q_gram.a == b.q_gram.a;
}

mpq_class table_coeff(const FourierTable& t, long alpha, const mpq_class& n) {
    if (mod1(n + qvalue(t.df, df_unrank(t.df, alpha))) != 0)
        throw std::domain_error("table_coeff: exponent invalid for component");
    if (n > t.N) throw std::domain_error("table_coeff: exponent beyond table truncation");
    auto it = t.c.find({alpha, n});
    return it == t.c.end() ? mpq_class(0) : it->second;
}

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

template <typename Table, typename Value>
std::complex<double> eval_component(const Table& t, long alpha, std::complex<double> tau) {
    std::complex<double> acc = 0;
    CoeffKey lo{alpha, mpq_class(-t.N) - 1};
    for (auto it = t.c.lower_bound(lo); it != t.c.end() && it->first.alpha == alpha; ++it) {
        double n = to_double(it->first.n);
        std::complex<double> q = std::exp(std::complex<double>(0, kTwoPi * n) * tau);
        if constexpr (std::is_same_v<Value, mpq_class>)
            acc += to_double(it->second) * q;
        else
            acc += it->second * q;
    }
    return acc;
}

}  // namespace

std::complex<double> eval_table_component(const FourierTableF& t, long alpha,
                                          std::complex<double> tau) {
    return eval_component<FourierTableF, double>(t, alpha, tau);
}

std::complex<double> eval_table_component(const FourierTable& t, long alpha,
                                          std::complex<double> tau) {
    return eval_component<FourierTable, mpq_class>(t, alpha, tau);
}

// ---------------------------------------------------------------------------
// Rational reconstruction.

namespace {

// Continued-fraction scan of exact v with denominator bound D: all
// convergents with denominator <= D in order, plus the other endpoint of the
// bracketing Farey-F_D interval (the deepest admissible semiconvergent, which
// lies on the opposite side of v from the deepest convergent).
struct CfScan {
    std::vector<mpq_class> convergents;
    mpq_class opposite;
    bool exact = false;  // v itself has denominator <= D
};

CfScan cf_scan(const mpq_class& v, const mpz_class& D) {
    if (D < 1) throw std::domain_error("cf_scan: denominator bound must be positive");
    CfScan st;
    mpz_class p0 = 0, q0 = 1, p1 = 1, q1 = 0;  // convergents h_{-2}, h_{-1}
    mpz_class num = v.get_num(), den = v.get_den();
    while (true) {
        mpz_class a, r;
        mpz_fdiv_qr(a.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        mpz_class p2 = a * p1 + p0, q2 = a * q1 + q0;
        if (q2 > D) {
            mpz_class t = (D - q0) / q1;
            st.opposite = make_rat(p0 + t * p1, q0 + t * q1);
            return st;
        }
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
        st.convergents.push_back(make_rat(p1, q1));
        if (r == 0) {
            st.exact = true;
            return st;
        }
        num = den;
        den = r;
    }
}

// Deepest convergent with denominator <= D.
mpq_class best_rational_exact(const mpq_class& v, const mpz_class& D) {
    return cf_scan(v, D).convergents.back();
}

// Farey neighbors of p/q (lowest terms, q <= D) in F_D, on both sides.
std::pair<mpq_class, mpq_class> farey_neighbors(const mpq_class& pq, const mpz_class& D) {
    mpz_class p = pq.get_num(), q = pq.get_den();
    if (q == 1) return {make_rat(p * D - 1, D), make_rat(p * D + 1, D)};
    mpz_class pinv, pm = p % q;
    if (pm < 0) pm += q;
    if (mpz_invert(pinv.get_mpz_t(), pm.get_mpz_t(), q.get_mpz_t()) == 0)
        throw std::logic_error("farey_neighbors: non-invertible numerator");
    // left:  u*q - v*p = -1 with v = pinv mod q;  right: u*q - v*p = 1, v = q - pinv.
    mpz_class vl = pinv + q * ((D - pinv) / q);
    mpz_class vr = (q - pinv) + q * ((D - (q - pinv)) / q);
    return {make_rat((vl * p - 1) / q, vl), make_rat((vr * p + 1) / q, vr)};
}

}  // namespace

mpq_class best_rational(double x, const mpz_class& max_den) {
    if (!std::isfinite(x)) throw std::domain_error("best_rational: non-finite input");
    return best_rational_exact(mpq_class(x), max_den);
}

FourierTable rationalize(const FourierTableF& t, const mpz_class& max_den, mpz_class* d_out) {
    FourierTable out;
    out.k = t.k;
    out.df = t.df;
    out.N = t.N;
    mpz_class d = 1;
    for (const auto& [key, val] : t.c) {
        double err = 0;
        if (auto it = t.err.find(key); it != t.err.end()) err = it->second;
        double floor = 1e-14 * (1.0 + std::fabs(val));
        const double w_snap = 10.0 * err + floor;
        const double w_amb = err + floor;
        mpq_class v(val);

        // The snap target is the EARLIEST convergent inside the snap window:
        // the simplest rational consistent with the value and its error bar.
        CfScan scan = cf_scan(v, max_den);
        mpq_class best;
        bool found = false;
        double nearest_dist = 0;
        for (size_t ci = 0; ci < scan.convergents.size(); ++ci) {
            const mpq_class& c = scan.convergents[ci];
            nearest_dist = std::fabs(to_double(mpq_class(v - c)));
            if (nearest_dist > w_snap) continue;
            best = c;
            found = true;
            // The only equal-denominator pair in a convergent list is the
            // two integers floor/ceil (second partial quotient 1); prefer
            // the nearer of the two when both are inside the window.
            if (ci + 1 < scan.convergents.size() &&
                scan.convergents[ci + 1].get_den() == best.get_den()) {
                double d2 = std::fabs(to_double(mpq_class(v - scan.convergents[ci + 1])));
                if (d2 <= w_snap && d2 < nearest_dist) {
                    best = scan.convergents[ci + 1];
                    nearest_dist = d2;
                }
            }
            break;
        }
        if (!found) {
            std::ostringstream os;
            os << "rationalize: no rational with denominator <= " << max_den.get_str()
               << " within tolerance of coefficient (alpha=" << key.alpha
               << ", n=" << rat_str(key.n) << "): value " << val << ", nearest "
               << rat_str(scan.convergents.back()) << ", distance " << nearest_dist
               << ", error estimate " << err;
            throw std::runtime_error(os.str());
        }

        // A rival hypothesis is credible when it is comparably simple (its
        // denominator within 4x the chosen one) and the error bar cannot
        // exclude it.  The nearest such rivals are the Farey-interval
        // endpoints around the value at the tightened denominator bound.
        mpz_class amb_den = 4 * best.get_den();
        if (amb_den > max_den) amb_den = max_den;
        std::vector<mpq_class> rivals;
        if (v == best) {
            auto [left, right] = farey_neighbors(best, amb_den);
            rivals = {left, right};
        } else {
            CfScan tight = cf_scan(v, amb_den);
            rivals.push_back(tight.convergents.back());
            if (!tight.exact) rivals.push_back(tight.opposite);
        }
        for (const mpq_class& rival : rivals) {
            if (rival == best) continue;
            if (std::fabs(to_double(mpq_class(v - rival))) <= w_amb) {
                std::ostringstream os;
                os << "rationalize: ambiguous reconstruction at (alpha=" << key.alpha
                   << ", n=" << rat_str(key.n) << "): " << rat_str(best) << " and "
                   << rat_str(rival) << " both lie within the error estimate " << err;
                throw std::runtime_error(os.str());
            }
        }

        if (best != 0) {
            out.c[key] = best;
            mpz_class den = best.get_den();
            mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), den.get_mpz_t());
        }
    }
    if (d_out) *d_out = d;
    return out;
}

// ---------------------------------------------------------------------------
// JSON.

namespace {

ordered_json df_to_ojson(const DiscriminantForm& df) {
    ordered_json j;
    j["orders"] = df.orders;
    ordered_json rows = ordered_json::array();
    const long k = static_cast<long>(df.orders.size());
    for (long i = 0; i < k; ++i) {
        ordered_json row = ordered_json::array();
        for (long c = 0; c < k; ++c) row.push_back(rat_str(df.q_gram.at(i, c)));
        rows.push_back(row);
    }
    j["q_gram"] = rows;
    return j;
}

DiscriminantForm df_from_ojson(const ordered_json& j) {
    std::vector<long> orders = j.at("orders").get<std::vector<long>>();
    const long k = static_cast<long>(orders.size());
    QMat qg(k, k);
    const auto& rows = j.at("q_gram");
    if (static_cast<long>(rows.size()) != k)
        throw std::domain_error("df json: q_gram row count mismatch");
    for (long i = 0; i < k; ++i)
        for (long c = 0; c < k; ++c)
            qg.at(i, c) = parse_rat(rows.at(i).at(c).get<std::string>());
    return df_from_parts(orders, qg);
}

ordered_json coeffs_to_ojson(const FourierTable& t) {
    ordered_json arr = ordered_json::array();
    for (const auto& [key, val] : t.c) {
        ordered_json e;
        e["alpha"] = df_unrank(t.df, key.alpha).coords;
        e["n"] = rat_str(key.n);
        e["c"] = rat_str(val);
        arr.push_back(e);
    }
    return arr;
}

ordered_json table_to_ojson(const FourierTable& t) {
    ordered_json j;
    j["k"] = rat_str(t.k);
    j["df"] = df_to_ojson(t.df);
    j["N"] = t.N;
    j["cusp"] = t.cusp;
    j["coeffs"] = coeffs_to_ojson(t);
    return j;
}

FourierTable table_from_ojson(const ordered_json& j) {
    FourierTable t;
    t.k = parse_rat(j.at("k").get<std::string>());
    t.df = df_from_ojson(j.at("df"));
    t.N = j.at("N").get<long>();
    t.cusp = j.value("cusp", false);
    for (const auto& e : j.at("coeffs")) {
        DfElement a = df_normalize(t.df, e.at("alpha").get<std::vector<long>>());
        CoeffKey key{df_rank(t.df, a), parse_rat(e.at("n").get<std::string>())};
        mpq_class val = parse_rat(e.at("c").get<std::string>());
        if (mod1(key.n + qvalue(t.df, a)) != 0)
            throw std::domain_error("table json: exponent invalid for component");
        if (val != 0) t.c[key] = val;
    }
    return t;
}

}  // namespace

std::string df_to_json(const DiscriminantForm& df) { return df_to_ojson(df).dump(2); }

DiscriminantForm df_from_json_text(const std::string& text) {
    return df_from_ojson(ordered_json::parse(text));
}

std::string table_to_json(const FourierTable& t) { return table_to_ojson(t).dump(2); }

FourierTable table_from_json_text(const std::string& text) {
    return table_from_ojson(ordered_json::parse(text));
}

std::string basis_to_json(const BasisTable& b) {
    ordered_json j;
    j["k"] = rat_str(b.k);
    j["df"] = df_to_ojson(b.df);
    j["N"] = b.N;
    j["kind"] = b.cusp ? "cusp" : "full";
    ordered_json forms = ordered_json::array();
    for (size_t i = 0; i < b.forms.size(); ++i) {
        ordered_json f;
        f["name"] = i < b.names.size() ? b.names[i] : ("form" + std::to_string(i));
        f["coeffs"] = coeffs_to_ojson(b.forms[i]);
        forms.push_back(f);
    }
    j["forms"] = forms;
    return j.dump(2);
}

BasisTable basis_from_json_text(const std::string& text) {
    ordered_json j = ordered_json::parse(text);
    BasisTable b;
    b.k = parse_rat(j.at("k").get<std::string>());
    b.df = df_from_ojson(j.at("df"));
    b.N = j.at("N").get<long>();
    b.cusp = j.at("kind").get<std::string>() == "cusp";
    for (const auto& f : j.at("forms")) {
        ordered_json tj;
        tj["k"] = rat_str(b.k);
        tj["df"] = df_to_ojson(b.df);
        tj["N"] = b.N;
        tj["cusp"] = b.cusp;
        tj["coeffs"] = f.at("coeffs");
        b.names.push_back(f.value("name", "form" + std::to_string(b.forms.size())));
        b.forms.push_back(table_from_ojson(tj));
    }
    return b;
}

std::string ppart_to_json(const PrincipalPart& p) {
    ordered_json j;
    j["df"] = df_to_ojson(p.df);
    ordered_json arr = ordered_json::array();
    for (const auto& [key, val] : p.c) {
        ordered_json e;
        e["alpha"] = df_unrank(p.df, key.alpha).coords;
        e["n"] = rat_str(key.n);
        e["c"] = val.get_str();
        arr.push_back(e);
    }
    j["terms"] = arr;
    return j.dump(2);
}

PrincipalPart ppart_from_json_text(const std::string& text) {
    ordered_json j = ordered_json::parse(text);
    PrincipalPart p;
    p.df = df_from_ojson(j.at("df"));
    for (const auto& e : j.at("terms")) {
        DfElement a = df_normalize(p.df, e.at("alpha").get<std::vector<long>>());
        mpq_class n = parse_rat(e.at("n").get<std::string>());
        if (n >= 0) throw std::domain_error("principal part: exponent must be negative");
        if (mod1(n - qvalue(p.df, a)) != 0)
            throw std::domain_error("principal part: exponent not in Z + q(alpha)");
        mpq_class val = parse_rat(e.at("c").get<std::string>());
        if (val.get_den() != 1)
            throw std::domain_error("principal part: coefficients must be integers");
        if (val != 0) {
            p.c[{df_rank(p.df, a), n}] = val.get_num();
            mpq_class depth = -n;
            if (depth > p.depth) p.depth = static_cast<long>(std::ceil(to_double(depth)));
        }
    }
    return p;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << text;
}

}  // namespace vvmf
