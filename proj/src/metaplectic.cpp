#include "vvmf/metaplectic.hpp"

#include <stdexcept>

namespace vvmf {

MetaplecticElement mp_identity() { return {}; }

MetaplecticElement mp_S() {
    MetaplecticElement m;
    m.a = 0; m.b = -1; m.c = 1; m.d = 0;
    return m;
}

MetaplecticElement mp_T() {
    MetaplecticElement m;
    m.b = 1;
    return m;
}

namespace {

// Angle class of the nonzero integer point (x, y), ordered by principal
// argument in (-pi, pi]: 0 = lower half, 1 = positive real axis, 2 = upper
// half, 3 = negative real axis.
int angle_class(const mpz_class& x, const mpz_class& y) {
    if (y < 0) return 0;
    if (y > 0) return 2;
    return x > 0 ? 1 : 3;
}

// Compares principal arguments of two nonzero integer points; -1/0/+1.
int cmp_angle(const mpz_class& px, const mpz_class& py, const mpz_class& qx,
              const mpz_class& qy) {
    int cp = angle_class(px, py), cq = angle_class(qx, qy);
    if (cp != cq) return cp < cq ? -1 : 1;
    if (cp == 1 || cp == 3) return 0;  // on an axis: same angle
    mpz_class cross = px * qy - py * qx;  // > 0 iff q is counterclockwise of p
    return cross > 0 ? -1 : (cross < 0 ? 1 : 0);
}

}  // namespace

int sqrt_branch_cocycle(const mpz_class& u_x, const mpz_class& u_y, const mpz_class& v_x,
                        const mpz_class& v_y) {
    // The product of principal square roots equals -principal(u-root) exactly
    // when Arg(u) - Arg(v) leaves (-pi, pi], i.e. when v lies strictly in the
    // lower half-plane and Arg(u) > Arg(-v), or Arg(v) > 0 and Arg(u) <= Arg(-v).
    int cv = angle_class(v_x, v_y);
    if (cv == 0) return cmp_angle(u_x, u_y, -v_x, -v_y) > 0 ? -1 : 1;
    if (cv == 2 || cv == 3) return cmp_angle(u_x, u_y, -v_x, -v_y) <= 0 ? -1 : 1;
    return 1;  // v on the positive real axis: difference stays in range
}

MetaplecticElement mp_mul(const MetaplecticElement& A, const MetaplecticElement& B) {
    MetaplecticElement P;
    P.a = A.a * B.a + A.b * B.c;
    P.b = A.a * B.b + A.b * B.d;
    P.c = A.c * B.a + A.d * B.c;
    P.d = A.c * B.b + A.d * B.d;
    int s = sqrt_branch_cocycle(P.d, P.c, B.d, B.c);
    P.eps = (A.eps + B.eps + (s < 0 ? 1 : 0)) & 1;
    return P;
}

MetaplecticElement mp_inv(const MetaplecticElement& A) {
    MetaplecticElement I;
    I.a = A.d; I.b = -A.b; I.c = -A.c; I.d = A.a;
    I.eps = 0;
    if (mp_mul(A, I).eps != 0) I.eps = 1;
    return I;
}

MetaplecticElement mp_pow(const MetaplecticElement& A, long e) {
    MetaplecticElement base = e < 0 ? mp_inv(A) : A;
    unsigned long n = e < 0 ? -static_cast<unsigned long>(e) : e;
    MetaplecticElement acc = mp_identity();
    while (n) {
        if (n & 1) acc = mp_mul(acc, base);
        base = mp_mul(base, base);
        n >>= 1;
    }
    return acc;
}

std::complex<double> mp_phi_at(const MetaplecticElement& A, std::complex<double> tau) {
    std::complex<double> j(A.d.get_d(), 0.0);
    j += A.c.get_d() * tau;
    std::complex<double> r = std::sqrt(j);  // principal branch
    return A.eps ? -r : r;
}

MetaplecticElement mp_eval_word(const Word& w) {
    MetaplecticElement acc = mp_identity();
    const MetaplecticElement S = mp_S(), T = mp_T();
    for (const auto& f : w) acc = mp_mul(acc, mp_pow(f.g == Gen::S ? S : T, f.e));
    return acc;
}

Word word_for_bottom_row(const mpz_class& c, const mpz_class& d) {
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), c.get_mpz_t(), d.get_mpz_t());
    if (g != 1) throw std::domain_error("word_for_bottom_row: row not primitive");
    // Bezout: a*d - b*c = 1.
    mpz_class a, negb;
    mpz_gcdext(g.get_mpz_t(), a.get_mpz_t(), negb.get_mpz_t(), d.get_mpz_t(), c.get_mpz_t());
    MetaplecticElement m;
    m.a = a; m.b = -negb; m.c = c; m.d = d;
    return word_decompose(m);
}

Word word_decompose(const MetaplecticElement& A) {
    if (A.a * A.d - A.b * A.c != 1) throw std::domain_error("word_decompose: determinant != 1");
    Word w;
    // Euclidean reduction of the first column (x, y) = (a, c): left-multiplying
    // by S * T^{-k} sends it to (y, -(x - k*y)), so rounding k to the nearest
    // quotient halves |y| each step.
    std::vector<mpz_class> ks;
    mpz_class x = A.a, y = A.c;
    while (y != 0) {
        mpz_class k, r;
        mpz_fdiv_qr(k.get_mpz_t(), r.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
        if (2 * abs(r) > abs(y)) { k += 1; r -= y; }  // round to nearest
        ks.push_back(k);
        x = y;
        y = -r;
    }
    // Now the reduced element R = S*T^{-k_r} * ... * S*T^{-k_1} * A is upper
    // triangular with first column (x, 0), x = +-1, so R = +-T^m for some m.
    // Hence A = T^{k_1} S^{-1} ... T^{k_r} S^{-1} * R.
    for (auto it = ks.begin(); it != ks.end(); ++it) {
        if (*it != 0) {
            if (!it->fits_slong_p()) throw std::overflow_error("word_decompose: huge exponent");
            w.push_back({Gen::T, it->get_si()});
        }
        w.push_back({Gen::S, -1});
    }
    MetaplecticElement head = mp_eval_word(w);
    MetaplecticElement rest = mp_mul(mp_inv(head), A);  // +-T^m with some branch
    if (rest.c != 0 || abs(rest.a) != 1)
        throw std::logic_error("word_decompose: reduction failed");
    if (rest.a == -1) {
        w.push_back({Gen::S, 2});  // S^2 = (-I, principal)
        if (!rest.b.fits_slong_p()) throw std::overflow_error("word_decompose: huge exponent");
        long m = mpz_class(-rest.b).get_si();
        if (m != 0) w.push_back({Gen::T, m});
    } else if (rest.b != 0) {
        if (!rest.b.fits_slong_p()) throw std::overflow_error("word_decompose: huge exponent");
        w.push_back({Gen::T, rest.b.get_si()});
    }
    MetaplecticElement got = mp_eval_word(w);
    if (got.eps != A.eps) {
        w.push_back({Gen::S, 4});  // S^4 = (I, -1)
        got = mp_eval_word(w);
    }
    if (!(got == A)) throw std::logic_error("word_decompose: re-multiplication mismatch");
    return w;
}

}  // namespace vvmf
