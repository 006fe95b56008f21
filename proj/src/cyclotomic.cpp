#include "vvmf/cyclotomic.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace vvmf {

namespace {

struct PrimePower {
    long p;        // prime
    long pe;       // p^e
    long pe1;      // p^{e-1}
    long phi;      // phi(p^e) = (p-1)p^{e-1}
    long cof;      // M / p^e
    long inv_cof;  // cof^{-1} mod p^e
};

long mod_pow_inv(long a, long m) {
    // inverse of a mod m via extended gcd; gcd(a,m)=1 expected
    long t = 0, nt = 1, r = m, nr = a % m;
    if (nr < 0) nr += m;
    while (nr != 0) {
        long q = r / nr;
        std::swap(t -= q * nt, nt);
        std::swap(r -= q * nr, nr);
    }
    if (r != 1) throw std::logic_error("mod_pow_inv: not invertible");
    return t < 0 ? t + m : t;
}

struct Field {
    long M = 1;
    std::vector<PrimePower> fac;
};

Field make_field(long M) {
    if (M <= 0) throw std::domain_error("cyclotomic modulus must be positive");
    Field f;
    f.M = M;
    long rest = M;
    for (long p = 2; p * p <= rest; ++p) {
        if (rest % p) continue;
        long pe = 1;
        while (rest % p == 0) { rest /= p; pe *= p; }
        f.fac.push_back({p, pe, pe / p, (pe / p) * (p - 1), 0, 0});
    }
    if (rest > 1) f.fac.push_back({rest, rest, 1, rest - 1, 0, 0});
    for (auto& pp : f.fac) {
        pp.cof = M / pp.pe;
        pp.inv_cof = mod_pow_inv(pp.cof % pp.pe, pp.pe);
    }
    return f;
}

// CRT digit of exponent j in the Z/p^e leg: a with zeta_M^j = ... zeta_{p^e}^a ...
inline long digit(const Field& f, size_t i, long j) {
    const auto& pp = f.fac[i];
    return static_cast<long>((static_cast<unsigned long long>(j % pp.pe) *
                              static_cast<unsigned long long>(pp.inv_cof)) % pp.pe);
}

// Accumulates coeff * zeta_M^j into the canonical-basis map, applying the
// prime-power reduction relations where a digit is out of range.
void accumulate(std::map<long, mpq_class>& dst, const Field& f, long j, const mpq_class& coeff) {
    if (coeff == 0) return;
    j %= f.M;
    if (j < 0) j += f.M;
    for (size_t i = 0; i < f.fac.size(); ++i) {
        const auto& pp = f.fac[i];
        long a = digit(f, i, j);
        if (a < pp.phi) continue;
        // zeta^{a} = -(zeta^{s} + zeta^{p^{e-1}+s} + ...) with s = a - phi
        long s = a - pp.phi;
        mpq_class neg = -coeff;
        for (long t = 0; t <= pp.p - 2; ++t) {
            // Replacing digit a by a2 in this leg shifts the exponent by
            // (a2 - a) * (M / p^e), since zeta_{p^e} = zeta_M^{M/p^e}.
            long a2 = t * pp.pe1 + s;
            long j2 = (j + (a2 - a) * pp.cof) % f.M;
            if (j2 < 0) j2 += f.M;
            accumulate(dst, f, j2, neg);
        }
        return;
    }
    auto it = dst.find(j);
    if (it == dst.end()) {
        dst.emplace(j, coeff);
    } else {
        it->second += coeff;
        if (it->second == 0) dst.erase(it);
    }
}

}  // namespace

Cyclo::Cyclo(const mpq_class& r) : m_(1) {
    if (r != 0) c_[0] = r;
}

Cyclo Cyclo::root_of_unity(long M, long j) {
    Field f = make_field(M);
    Cyclo z;
    z.m_ = M;
    accumulate(z.c_, f, j, mpq_class(1));
    return z;
}

Cyclo Cyclo::unit_phase(const mpq_class& t) {
    mpq_class r = mod1(t);
    long den = static_cast<long>(r.get_den().get_si());
    long num = static_cast<long>(r.get_num().get_si());
    return root_of_unity(den, num);
}

bool Cyclo::is_rational() const {
    return c_.empty() || (c_.size() == 1 && c_.begin()->first == 0);
}

mpq_class Cyclo::rational_value() const {
    if (c_.empty()) return mpq_class(0);
    if (!is_rational())
        throw std::domain_error("rational_value: cyclotomic number is not rational: " + str());
    return c_.begin()->second;
}

Cyclo Cyclo::lifted(long M2) const {
    if (M2 == m_) return *this;
    if (M2 % m_ != 0)
        throw std::domain_error("lifted: target modulus not a multiple of current one");
    Field f = make_field(M2);
    Cyclo z;
    z.m_ = M2;
    long scale = M2 / m_;
    for (const auto& [j, co] : c_) accumulate(z.c_, f, j * scale, co);
    return z;
}

Cyclo Cyclo::operator-() const {
    Cyclo z = *this;
    for (auto& [j, co] : z.c_) co = -co;
    return z;
}

Cyclo Cyclo::operator+(const Cyclo& o) const {
    long M = lcm_long(m_, o.m_);
    Cyclo a = lifted(M), b = o.lifted(M);
    for (const auto& [j, co] : b.c_) {
        auto it = a.c_.find(j);
        if (it == a.c_.end()) {
            a.c_.emplace(j, co);
        } else {
            it->second += co;
            if (it->second == 0) a.c_.erase(it);
        }
    }
    return a;
}

Cyclo Cyclo::operator-(const Cyclo& o) const { return *this + (-o); }

Cyclo Cyclo::operator*(const Cyclo& o) const {
    long M = lcm_long(m_, o.m_);
    Cyclo a = lifted(M), b = o.lifted(M);
    Field f = make_field(M);
    Cyclo z;
    z.m_ = M;
    for (const auto& [ja, ca] : a.c_)
        for (const auto& [jb, cb] : b.c_) accumulate(z.c_, f, ja + jb, ca * cb);
    return z;
}

Cyclo Cyclo::operator*(const mpq_class& s) const {
    Cyclo z;
    z.m_ = m_;
    if (s == 0) return z;
    z.c_ = c_;
    for (auto& [j, co] : z.c_) co *= s;
    return z;
}

Cyclo Cyclo::conjugate() const {
    Field f = make_field(m_);
    Cyclo z;
    z.m_ = m_;
    for (const auto& [j, co] : c_) accumulate(z.c_, f, m_ - j, co);
    return z;
}

Cyclo Cyclo::inverse() const {
    if (is_zero()) throw std::domain_error("inverse: division by zero cyclotomic number");
    if (is_rational()) return Cyclo(mpq_class(1) / rational_value());
    Cyclo cj = conjugate();
    Cyclo nr = *this * cj;
    if (nr.is_rational()) return cj * (mpq_class(1) / nr.rational_value());
    // Fall back to the product of all nontrivial Galois conjugates.
    Cyclo prod(mpq_class(1));
    Field f = make_field(m_);
    for (long k = 2; k < m_; ++k) {
        if (std::gcd(k, m_) != 1) continue;
        Cyclo sk;
        sk.m_ = m_;
        for (const auto& [j, co] : c_) accumulate(sk.c_, f, j * k, co);
        prod = prod * sk;
    }
    Cyclo nrm = *this * prod;
    return prod * (mpq_class(1) / nrm.rational_value());
}

bool Cyclo::operator==(const Cyclo& o) const {
    long M = lcm_long(m_, o.m_);
    return lifted(M).c_ == o.lifted(M).c_;
}

std::complex<double> Cyclo::embed() const {
    std::complex<double> acc(0.0, 0.0);
    const double w = 2.0 * 3.14159265358979323846 / static_cast<double>(m_);
    for (const auto& [j, co] : c_)
        acc += to_double(co) * std::complex<double>(std::cos(w * j), std::sin(w * j));
    return acc;
}

std::string Cyclo::str() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [j, co] : c_) {
        mpq_class a = co;
        if (first) {
            if (a < 0) { os << "-"; a = -a; }
        } else {
            os << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        first = false;
        if (j == 0) {
            os << a.get_str();
        } else {
            if (a != 1) os << a.get_str() << "*";
            os << "z" << m_ << "^" << j;
        }
    }
    return os.str();
}

long euler_phi(long M) {
    Field f = make_field(M);
    long r = 1;
    for (const auto& pp : f.fac) r *= pp.phi;
    return r;
}

namespace {

using ZPoly = std::vector<mpz_class>;  // coefficient list, low degree first

// Exact division adapted to the (x^M - 1) / prod cyclotomic factor chain.
ZPoly poly_divide_exact(const ZPoly& num, const ZPoly& den) {
    ZPoly r = num;
    ZPoly q(r.size() >= den.size() ? r.size() - den.size() + 1 : 0, 0);
    for (long i = static_cast<long>(r.size()) - 1; i >= static_cast<long>(den.size()) - 1; --i) {
        if (r[i] == 0) continue;
        mpz_class c = r[i] / den.back();
        long off = i - (static_cast<long>(den.size()) - 1);
        q[off] = c;
        for (size_t k = 0; k < den.size(); ++k) r[off + k] -= c * den[k];
    }
    for (const auto& rem : r)
        if (rem != 0) throw std::logic_error("poly_divide_exact: nonzero remainder");
    while (q.size() > 1 && q.back() == 0) q.pop_back();
    return q;
}

ZPoly cyclotomic_poly(long n, std::map<long, ZPoly>& memo) {
    auto it = memo.find(n);
    if (it != memo.end()) return it->second;
    ZPoly num(n + 1, 0);
    num[0] = -1;
    num[n] = 1;  // x^n - 1
    ZPoly acc{1};
    for (long d = 1; d < n; ++d) {
        if (n % d) continue;
        ZPoly pd = cyclotomic_poly(d, memo);
        ZPoly nacc(acc.size() + pd.size() - 1, 0);
        for (size_t i = 0; i < acc.size(); ++i)
            for (size_t k = 0; k < pd.size(); ++k) nacc[i + k] += acc[i] * pd[k];
        acc = nacc;
    }
    ZPoly res = poly_divide_exact(num, acc);
    memo[n] = res;
    return res;
}

}  // namespace

std::vector<mpq_class> Cyclo::power_basis_coeffs() const {
    if (m_ > 1024)
        throw std::domain_error("power_basis_coeffs: dense export limited to modulus <= 1024");
    long phi = euler_phi(m_);
    static std::map<long, ZPoly> memo;
    ZPoly cp = cyclotomic_poly(m_, memo);
    // Rows: x^t mod Phi_M for t = 0..M-1.
    std::vector<std::vector<mpq_class>> pow(m_, std::vector<mpq_class>(phi, mpq_class(0)));
    for (long t = 0; t < phi; ++t) pow[t][t] = 1;
    for (long t = phi; t < m_; ++t) {
        // x * pow[t-1], reduced: x^phi = -(cp[0] + cp[1] x + ...)/cp[phi] (monic)
        std::vector<mpq_class>& r = pow[t];
        const std::vector<mpq_class>& prev = pow[t - 1];
        mpq_class lead = prev[phi - 1];
        for (long i = 0; i < phi; ++i) {
            r[i] = (i > 0 ? prev[i - 1] : mpq_class(0));
            r[i] -= lead * mpq_class(cp[i]);
        }
    }
    std::vector<mpq_class> out(phi, mpq_class(0));
    for (const auto& [j, co] : c_)
        for (long i = 0; i < phi; ++i) out[i] += co * pow[j][i];
    return out;
}

Cyclo cyclo_sqrt(const mpz_class& n) {
    if (n <= 0) throw std::domain_error("cyclo_sqrt: argument must be positive");
    // n = a^2 * b with b squarefree; sqrt(n) = a * prod_{p | b} sqrt(p).
    mpz_class rest = n, a = 1, b = 1;
    for (mpz_class p = 2; p * p <= rest; ++p) {
        if (rest % p != 0) continue;
        int e = 0;
        while (rest % p == 0) { rest /= p; ++e; }
        mpz_class half;
        mpz_pow_ui(half.get_mpz_t(), p.get_mpz_t(), e / 2);
        a *= half;
        if (e % 2) b *= p;
    }
    if (rest > 1) b *= rest;
    Cyclo r{mpq_class(a)};
    for (mpz_class p = 2; b > 1; ++p) {
        if (b % p != 0) continue;
        b /= p;  // b is squarefree, so p appears exactly once
        long pl = p.get_si();
        if (pl == 2) {
            // sqrt(2) = zeta_8 + zeta_8^{-1}
            r = r * (Cyclo::root_of_unity(8, 1) + Cyclo::root_of_unity(8, 7));
        } else {
            // Quadratic Gauss sum: sum_t zeta_p^{t^2} equals sqrt(p) for
            // p = 1 mod 4 and i*sqrt(p) for p = 3 mod 4.
            Cyclo gp;
            for (long t = 0; t < pl; ++t)
                gp += Cyclo::root_of_unity(pl, (t * t) % pl);
            if (pl % 4 == 3) gp = gp * Cyclo::root_of_unity(4, 3);  // multiply by -i
            r = r * gp;
        }
    }
    return r;
}

}  // namespace vvmf
