#include "vvmf/eisenstein.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "vvmf/rat.hpp"
#include "vvmf/weil.hpp"

namespace vvmf {

namespace {

constexpr double kPi = 3.14159265358979323846264338328;
constexpr double kTwoPi = 2.0 * kPi;

struct EisContext {
    const DiscriminantForm& df;
    WeilFloatEngine engine;
    long n;                      // component count
    mpq_class kq;                // exact weight
    double kd;                   // weight as double
    std::complex<double> pref;   // (-2 pi i)^k / Gamma(k)
    long level;
    std::vector<long> toff;      // level * (exponent offset of component alpha)

    EisContext(const DiscriminantForm& d, const mpq_class& k) : df(d), engine(d), kq(k) {
        if (!(k > 2)) throw std::domain_error("eisenstein: weight must exceed 2");
        if (k.get_den() != 1 && k.get_den() != 2)
            throw std::domain_error("eisenstein: weight must be a half-integer");
        kd = to_double(k);
        // The sum over coset representatives is well defined only when the
        // Z-translate reproduces each term: i^{-2k} * conj(rho(S^2)_00)^{-1} = 1.
        std::complex<double> sigma = engine.s2_scalar();
        std::complex<double> factor =
            std::exp(std::complex<double>(0, -kPi * kd)) / std::conj(sigma);
        if (std::abs(factor - 1.0) > 1e-9)
            throw std::domain_error(
                "eisenstein: weight parity incompatible with the representation");
        pref = std::pow(kTwoPi, kd) * std::exp(std::complex<double>(0, -kPi * kd / 2.0)) /
               std::tgamma(kd);
        level = df.level;
        n = engine.dim();
        toff.resize(n);
        for (long a = 0; a < n; ++a) {
            mpq_class off = mod1(-qvalue(df, df_unrank(df, a)));
            mpq_class t = off * level;
            if (t.get_den() != 1) throw std::logic_error("eisenstein: level does not clear q");
            toff[a] = static_cast<long>(t.get_num().get_si());
        }
    }
};

// sum over the component exponent grid nu in (1/L) Z, nu > 0 of
// nu^{k-1} e^{-2 pi nu y}: bounds the modulus of any inner nu-series.
double grid_sum_bound(double kd, long L, double y) {
    double s = 0;
    for (long j = 1;; ++j) {
        double nu = static_cast<double>(j) / L;
        double t = std::pow(nu, kd - 1.0) * std::exp(-kTwoPi * nu * y);
        s += t;
        if (nu > (kd - 1.0) / (kTwoPi * y) && t < 1e-18 * (s + 1e-300)) break;
        if (j > 100000000) break;  // defensive
    }
    return s;
}

std::vector<long> unit_residues(long c) {
    std::vector<long> r;
    if (c == 1) {
        r.push_back(0);
        return r;
    }
    for (long d = 1; d < c; ++d)
        if (std::gcd(d, c) == 1) r.push_back(d);
    return r;
}

}  // namespace

int resolve_thread_count(int cli_value) {
    if (cli_value > 0) return cli_value;
    if (const char* env = std::getenv("VVMF_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    return 1;
}

std::vector<MetaplecticElement> coset_reps(long C) {
    if (C < 0) throw std::domain_error("coset_reps: negative bound");
    std::vector<MetaplecticElement> reps;
    reps.push_back(mp_identity());
    for (long c = 1; c <= C; ++c)
        for (long d0 : unit_residues(c))
            reps.push_back(mp_eval_word(word_for_bottom_row(c, d0)));
    return reps;
}

std::vector<std::complex<double>> eval_E(const DiscriminantForm& df, const mpq_class& k,
                                         std::complex<double> tau, long C,
                                         double* tail_bound) {
    if (tau.imag() <= 0) throw std::domain_error("eval_E: tau not in the upper half plane");
    EisContext ctx(df, k);
    const double y = tau.imag();
    const long L = ctx.level;
    // Inner exponent cut: drop nu once nu^{k-1} e^{-2 pi nu y} < eps_nu on the
    // decreasing side.
    const double eps_nu = 1e-17;
    long Mcut = L;  // in grid steps of 1/L
    while (true) {
        double nu = static_cast<double>(Mcut) / L;
        if (nu > (ctx.kd - 1.0) / (kTwoPi * y) &&
            std::pow(nu, ctx.kd - 1.0) * std::exp(-kTwoPi * nu * y) < eps_nu)
            break;
        Mcut *= 2;
        if (Mcut > (1L << 26)) break;
    }

    std::vector<std::complex<double>> E(ctx.n, 0.0);
    E[0] = 1.0;
    for (long c = 1; c <= C; ++c) {
        double cfac = std::pow(static_cast<double>(c), -ctx.kd);
        for (long d0 : unit_residues(c)) {
            Word w = word_for_bottom_row(c, d0);
            std::vector<std::complex<double>> u = ctx.engine.dual_inv_column(w);
            std::complex<double> tau_shift = tau + std::complex<double>(
                                                       static_cast<double>(d0) / c, 0.0);
            for (long a = 0; a < ctx.n; ++a) {
                if (std::abs(u[a]) < 1e-18) continue;
                std::complex<double> inner = 0.0;
                for (long j = (ctx.toff[a] == 0 ? L : ctx.toff[a]); j <= Mcut; j += L) {
                    double nu = static_cast<double>(j) / L;
                    inner += std::pow(nu, ctx.kd - 1.0) *
                             std::exp(std::complex<double>(0, kTwoPi * nu) * tau_shift);
                }
                E[a] += ctx.pref * cfac * u[a] * inner;
            }
        }
    }
    if (tail_bound) {
        double vb = grid_sum_bound(ctx.kd, L, y);
        double layer_tail =
            std::abs(ctx.pref) * vb * std::pow(static_cast<double>(C), 2.0 - ctx.kd) /
            (ctx.kd - 2.0);
        double nu_tail = std::abs(ctx.pref) * (C > 0 ? 2.0 : 0.0) * eps_nu * C;
        *tail_bound = layer_tail + nu_tail;
    }
    return E;
}

// ---------------------------------------------------------------------------
// Coefficient extraction, closed-form-per-layer route.

namespace {

struct KeyLayout {
    std::vector<CoeffKey> keys;
    std::vector<long> first;   // first flat index of each component
    std::vector<long> count;   // exponent count of each component
};

KeyLayout make_layout(const DiscriminantForm& df, long N) {
    KeyLayout lay;
    lay.keys = table_support(df, N);
    const long n = df_size_long(df);
    lay.first.assign(n, 0);
    lay.count.assign(n, 0);
    for (long i = 0; i < static_cast<long>(lay.keys.size()); ++i) {
        long a = lay.keys[i].alpha;
        if (lay.count[a] == 0) lay.first[a] = i;
        ++lay.count[a];
    }
    return lay;
}

// Accumulates one layer c into partial[]: for every component alpha and
// every exponent nu = off_alpha + m, adds c^{-k} * u_alpha(c, d0) * e(nu d0 / c).
void accumulate_layer(const EisContext& ctx, const KeyLayout& lay, long c,
                      std::complex<double>* partial) {
    double cfac = std::pow(static_cast<double>(c), -ctx.kd);
    std::vector<std::complex<double>> wl_pow(ctx.level + 1);
    for (long d0 : unit_residues(c)) {
        Word w = word_for_bottom_row(c, d0);
        std::vector<std::complex<double>> u = ctx.engine.dual_inv_column(w);
        double theta = kTwoPi * static_cast<double>(d0) /
                       (static_cast<double>(c) * ctx.level);
        std::complex<double> wl(std::cos(theta), std::sin(theta));
        wl_pow[0] = 1.0;
        for (long j = 1; j <= ctx.level; ++j) wl_pow[j] = wl_pow[j - 1] * wl;
        const std::complex<double> wstep = wl_pow[ctx.level];  // e(d0 / c)
        for (long a = 0; a < ctx.n; ++a) {
            std::complex<double> coeff = cfac * u[a];
            std::complex<double> ph = wl_pow[ctx.toff[a]];
            long base = lay.first[a], cnt = lay.count[a];
            for (long m = 0; m < cnt; ++m) {
                partial[base + m] += coeff * ph;
                ph *= wstep;
            }
        }
    }
}

FourierTableF coeffs_by_unfolding(const EisContext& ctx, long N, const EisOptions& opt) {
    const KeyLayout lay = make_layout(ctx.df, N);
    const long K = static_cast<long>(lay.keys.size());
    const long chunk_size = 64;
    const long max_chunks = std::max<long>(1, opt.adapt_max_C / chunk_size);

    // nu^{k-1} |pref| per key, for converting layer magnitudes to coefficient
    // error scale.
    std::vector<double> nu_scale(K);
    for (long i = 0; i < K; ++i) {
        double nu = to_double(lay.keys[i].n);
        nu_scale[i] = nu > 0 ? std::abs(ctx.pref) * std::pow(nu, ctx.kd - 1.0) : 0.0;
    }

    std::vector<std::vector<std::complex<double>>> chunk_sum;  // per chunk, per key
    long chunks_done = 0;

    auto run_chunks = [&](long upto) {
        chunk_sum.resize(upto);
        std::atomic<long> next(chunks_done);
        int nthreads = std::max(1, opt.threads);
        auto worker = [&]() {
            while (true) {
                long idx = next.fetch_add(1);
                if (idx >= upto) break;
                std::vector<std::complex<double>> part(K, 0.0);
                for (long c = idx * chunk_size + 1; c <= (idx + 1) * chunk_size; ++c)
                    accumulate_layer(ctx, lay, c, part.data());
                chunk_sum[idx] = std::move(part);
            }
        };
        if (nthreads == 1) {
            worker();
        } else {
            std::vector<std::thread> pool;
            for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
            for (auto& th : pool) th.join();
        }
        chunks_done = upto;
    };

    if (opt.C > 0) {
        run_chunks((opt.C + chunk_size - 1) / chunk_size);
    } else {
        run_chunks(std::min<long>(4, max_chunks));  // C = 256 to start
    }
    if (opt.C <= 0) {
        // Double until the most recent chunk's realized contribution is small.
        while (chunks_done < max_chunks) {
            double worst = 0;
            const auto& last = chunk_sum[chunks_done - 1];
            for (long i = 0; i < K; ++i)
                worst = std::max(worst, std::abs(last[i]) * nu_scale[i]);
            if (worst < opt.tol) break;
            run_chunks(std::min(chunks_done * 2, max_chunks));
        }
    }

    // Ordered serial reduction (deterministic across thread counts).
    std::vector<std::complex<double>> acc(K, 0.0);
    for (long idx = 0; idx < chunks_done; ++idx)
        for (long i = 0; i < K; ++i) acc[i] += chunk_sum[idx][i];

    FourierTableF out;
    out.k = ctx.kq;
    out.df = ctx.df;
    out.N = N;
    for (long i = 0; i < K; ++i) {
        const CoeffKey& key = lay.keys[i];
        if (key.n == 0) {
            out.c[key] = key.alpha == 0 ? 1.0 : 0.0;
            out.err[key] = 0.0;
            continue;
        }
        std::complex<double> z = ctx.pref * std::pow(to_double(key.n), ctx.kd - 1.0) * acc[i];
        // Dropped-layer estimate: chunk magnitudes w_j decay roughly like
        // j^{-p}; read p off the realized window and extrapolate
        // sum_{j > n} w_j ~ w_n * n / (p - 1).
        double w_last = std::abs(chunk_sum[chunks_done - 1][i]);
        double w_prev = chunks_done >= 2 ? std::abs(chunk_sum[chunks_done - 2][i]) : w_last;
        double base = std::max(w_last, w_prev);
        double p = 1.2;
        if (chunks_done >= 4) {
            double w_half = std::abs(chunk_sum[chunks_done / 2 - 1][i]);
            if (base > 0 && w_half > base)
                p = std::log(w_half / base) / std::log(2.0);
        }
        p = std::min(std::max(p, 1.2), 30.0);
        double dropped = w_last + w_prev + base * chunks_done / (p - 1.0);
        double err = dropped * nu_scale[i] + std::abs(z.imag()) + 1e-13 * (1.0 + std::abs(z));
        out.c[key] = z.real();
        out.err[key] = err;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Coefficient extraction by sampling a horizontal line and discretizing the
// x-integral (alias step = sample count).

FourierTableF coeffs_by_sampling(const EisContext& ctx, long N, const EisOptions& opt) {
    const long L = ctx.level;
    const long min_samples = 8 * (N + L);
    const long S = opt.samples > 0 ? opt.samples : min_samples;
    if (S < min_samples)
        throw std::domain_error("fourier_coeffs_E: insufficient samples for requested N");
    const KeyLayout lay = make_layout(ctx.df, N);

    FourierTableF out;
    out.df = ctx.df;
    out.N = N;

    // Group keys by integer band ceil(nu); one height per band.
    std::vector<std::vector<long>> bands(N + 1);
    for (long i = 0; i < static_cast<long>(lay.keys.size()); ++i) {
        double nu = to_double(lay.keys[i].n);
        long b = static_cast<long>(std::ceil(nu - 1e-12));
        if (nu == 0.0) {
            // The x-integral at nu = 0 is still formed; band 0.
            b = 0;
        }
        bands[std::min(b, N)].push_back(i);
    }

    for (long b = 0; b <= N; ++b) {
        if (bands[b].empty()) continue;
        double y = 1.0 / std::max<double>(1.0, static_cast<double>(b));
        // Choose the layer cut from the rigorous tail bound.
        long C = opt.C;
        double vb = grid_sum_bound(ctx.kd, L, y);
        if (C <= 0) {
            double target = opt.tol * std::exp(-kTwoPi * b * y) * 0.1;
            double base = std::abs(ctx.pref) * vb / (ctx.kd - 2.0);
            C = static_cast<long>(std::ceil(std::pow(base / target, 1.0 / (ctx.kd - 2.0))));
            C = std::max<long>(C, 8);
            C = std::min<long>(C, 20000);
        }
        double tail = 0;
        std::vector<std::vector<std::complex<double>>> samples(S);
        for (long j = 0; j < S; ++j) {
            double tb = 0;
            samples[j] = eval_E(ctx.df, ctx.kq,
                                std::complex<double>(static_cast<double>(j) / S, y), C, &tb);
            tail = std::max(tail, tb);
        }
        for (long i : bands[b]) {
            const CoeffKey& key = lay.keys[i];
            double nu = to_double(key.n);
            std::complex<double> acc = 0.0;
            for (long j = 0; j < S; ++j)
                acc += samples[j][key.alpha] *
                       std::exp(std::complex<double>(0, -kTwoPi * nu * j / S));
            acc /= static_cast<double>(S);
            double amp = std::exp(kTwoPi * nu * y);
            std::complex<double> z = acc * amp;
            // Aliases live at nu + S, nu + 2S, ...; estimate their size from the
            // coefficient growth envelope.
            double alias = 0;
            for (int t = 1; t <= 2; ++t)
                alias += 3.0 * std::abs(ctx.pref) * std::pow(nu + t * S, ctx.kd - 1.0) *
                         std::exp(-kTwoPi * (nu + t * S) * y) * amp;
            double err = (tail + 1e-12) * amp + alias + std::abs(z.imag());
            out.c[key] = z.real();
            out.err[key] = err;
        }
    }
    return out;
}

}  // namespace

FourierTableF fourier_coeffs_E(const DiscriminantForm& df, const mpq_class& k, long N,
                               const EisOptions& opt) {
    if (N < 0) throw std::domain_error("fourier_coeffs_E: negative truncation");
    EisContext ctx(df, k);
    FourierTableF t;
    if (opt.method == "dft") {
        t = coeffs_by_sampling(ctx, N, opt);
    } else if (opt.method == "unfold" || opt.method == "auto") {
        t = coeffs_by_unfolding(ctx, N, opt);
    } else {
        throw std::domain_error("fourier_coeffs_E: unknown method '" + opt.method + "'");
    }
    t.k = k;
    return t;
}

}  // namespace vvmf
