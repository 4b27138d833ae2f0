#pragma once

// Numerical laboratory for the exponential sums and combinatorial identities:
// the Vaughan dissection (exact Lambda-weighted identity), direct evaluation
// of the W / U sums and the sieve-weighted solution counts Gamma / Sigma_j,
// the squared Weyl-van der Corput inequality, and a diagnostic probe of the
// exponent-pair bound.

#include "psap/common.hpp"
#include "psap/exponent_pairs.hpp"
#include "psap/floor_pow.hpp"
#include "psap/harmonic.hpp"
#include "psap/primes.hpp"
#include "psap/rational.hpp"
#include "psap/sieve.hpp"

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

namespace psap::expsum {

using Cplx = std::complex<double>;
using BlackBox = std::function<Cplx(std::uint64_t)>;

inline Cplx e_of(long double x) {
    long double t = x - std::floor(x);  // reduce mod 1 before scaling by 2 pi
    double a = static_cast<double>(2.0L * 3.14159265358979323846264338327950288L * t);
    return {std::cos(a), std::sin(a)};
}

// ----- Vaughan dissection ---------------------------------------------------
//
// With u = P^(1/3) (integer comparisons k^3 <= P, so the cut is exact):
//   S1 = sum_{k <= u} mu(k) sum_{P/k < l <= 2P/k} log(l) f(kl)
//   S2 = sum_{k <= u^2} c(k) sum_{P/k < l <= 2P/k} f(kl),
//        c(k) = sum_{mn = k, m <= u, n <= u} mu(m) Lambda(n)
//   S3 = sum_{k > u} a(k) sum_{P/k < l <= 2P/k, l > u} Lambda(l) f(kl),
//        a(k) = sum_{d | k, d <= u} mu(d)
// and S1 - S2 - S3 equals sum_{P < n <= 2P} Lambda(n) f(n) exactly. Keeping
// l > u in S3 (rather than truncating k at P^(2/3)) is what makes the
// identity exact; the truncated form differs by boundary terms that the
// asymptotic argument absorbs into an error term.

struct VaughanPieces {
    double u = 0.0;           // P^(1/3)
    std::uint64_t u_int = 0;  // floor(P^(1/3)), exact
    Cplx s1, s2, s3;
    std::vector<std::int32_t> a;  // a[k], k <= 2P/(u_int+1)
    std::vector<double> c;        // c[k], k <= u_int^2

    Cplx total() const { return s1 - s2 - s3; }
};

inline std::uint64_t icbrt(std::uint64_t x) {
    std::uint64_t r = static_cast<std::uint64_t>(std::cbrt(static_cast<double>(x)));
    while (r > 0 && r * r * r > x) --r;
    while ((r + 1) * (r + 1) * (r + 1) <= x) ++r;
    return r;
}

inline VaughanPieces vaughan_decompose(std::uint64_t P, const BlackBox& f) {
    if (P < 8) throw std::invalid_argument("vaughan_decompose: need P >= 8");
    VaughanPieces out;
    const std::uint64_t u = icbrt(P);
    out.u_int = u;
    out.u = std::cbrt(static_cast<double>(P));

    const std::uint64_t k3_max = 2 * P / (u + 1);  // largest k with an l > u
    auto mu = mobius_table(u);
    auto lam = von_mangoldt_table(std::max(k3_max, u * u));

    // a(k) by sieving small squarefree divisors.
    out.a.assign(k3_max + 1, 0);
    for (std::uint64_t d = 1; d <= u; ++d) {
        if (mu[d] == 0) continue;
        for (std::uint64_t k = d; k <= k3_max; k += d) out.a[k] += mu[d];
    }
    // c(k) over products of a small mu factor and a small prime power.
    out.c.assign(u * u + 1, 0.0);
    for (std::uint64_t m = 1; m <= u; ++m) {
        if (mu[m] == 0) continue;
        for (std::uint64_t n = 2; n <= u; ++n) {
            if (lam[n] == 0.0) continue;
            out.c[m * n] += mu[m] * lam[n];
        }
    }

    for (std::uint64_t k = 1; k <= u; ++k) {
        if (mu[k] == 0) continue;
        Cplx inner = 0;
        for (std::uint64_t l = P / k + 1; k * l <= 2 * P; ++l)
            inner += std::log(static_cast<double>(l)) * f(k * l);
        out.s1 += static_cast<double>(mu[k]) * inner;
    }
    for (std::uint64_t k = 1; k < out.c.size(); ++k) {
        if (out.c[k] == 0.0) continue;
        Cplx inner = 0;
        for (std::uint64_t l = P / k + 1; k * l <= 2 * P; ++l) inner += f(k * l);
        out.s2 += out.c[k] * inner;
    }
    for (std::uint64_t k = u + 1; k <= k3_max; ++k) {
        if (out.a[k] == 0) continue;
        Cplx inner = 0;
        for (std::uint64_t l = std::max(P / k, u) + 1; k * l <= 2 * P; ++l)
            if (lam[l] != 0.0) inner += lam[l] * f(k * l);
        out.s3 += static_cast<double>(out.a[k]) * inner;
    }
    return out;
}

// The left-hand side of the identity, summed directly.
inline Cplx lambda_weighted_sum(std::uint64_t P, const BlackBox& f) {
    auto lam = von_mangoldt_table(2 * P);
    Cplx s = 0;
    for (std::uint64_t n = P + 1; n <= 2 * P; ++n)
        if (lam[n] != 0.0) s += lam[n] * f(n);
    return s;
}

// ----- direct evaluation of the paper's sums --------------------------------

struct ExpSumContext {
    std::uint64_t N = 0;
    int j = 0;  // 0 or 1
    Rational c;
    double P = 0.0;       // window (P, 2P]
    std::int64_t d = 1;   // v = h/d
    std::int64_t h = 1;
    std::int64_t r = 0;   // frequency in U
    double T = 0.0;       // in [N, N+2]

    double v() const { return static_cast<double>(h) / static_cast<double>(d); }

    static ExpSumContext make(std::uint64_t N, int j, const Rational& c, double P,
                              std::int64_t d, std::int64_t h) {
        if (j != 0 && j != 1) throw std::invalid_argument("context: j must be 0 or 1");
        if (!(P >= 2)) throw std::invalid_argument("context: need P >= 2");
        if (d < 1 || h < 0) throw std::invalid_argument("context: need d >= 1, h >= 0");
        ExpSumContext ctx;
        ctx.N = N;
        ctx.j = j;
        ctx.c = c;
        ctx.P = P;
        ctx.d = d;
        ctx.h = h;
        ctx.T = static_cast<double>(N);
        return ctx;
    }
};

// W(v) = sum_{P<p<=2P} log p * e(v (N + j - [p^c])^gamma), certified floors.
inline Cplx eval_W(const ExpSumContext& ctx, const certified::PowerPair& pow) {
    const long double g = rat_den(ctx.c).convert_to<long double>() /
                          rat_num(ctx.c).convert_to<long double>();
    const long double v = static_cast<long double>(ctx.h) / static_cast<long double>(ctx.d);
    Cplx s = 0;
    for (std::uint32_t p : primes_up_to(static_cast<std::uint64_t>(2 * ctx.P))) {
        if (!(p > ctx.P && p <= 2 * ctx.P)) continue;
        std::uint64_t fp = pow.floor_pow(p);
        if (fp >= ctx.N + static_cast<std::uint64_t>(ctx.j))
            throw std::invalid_argument("eval_W: N + j - [p^c] <= 0 in window");
        long double x = powl(static_cast<long double>(ctx.N + ctx.j - fp), g);
        s += std::log(static_cast<double>(p)) * e_of(v * x);
    }
    return s;
}

// U(T, r, v) = sum_{P<p<=2P} log p * e(r p^c + v (T - p^c)^gamma); here p^c is
// the true power, not its floor.
inline Cplx eval_U(const ExpSumContext& ctx) {
    const long double cc = rat_num(ctx.c).convert_to<long double>() /
                           rat_den(ctx.c).convert_to<long double>();
    const long double g = 1.0L / cc;
    const long double v = static_cast<long double>(ctx.h) / static_cast<long double>(ctx.d);
    const long double T = static_cast<long double>(ctx.T);
    Cplx s = 0;
    for (std::uint32_t p : primes_up_to(static_cast<std::uint64_t>(2 * ctx.P))) {
        if (!(p > ctx.P && p <= 2 * ctx.P)) continue;
        long double pc = powl(static_cast<long double>(p), cc);
        if (!(T - pc > 0)) throw std::invalid_argument("eval_U: T - p^c <= 0 in window");
        long double ph1 = static_cast<long double>(ctx.r) * pc;
        long double ph2 = v * powl(T - pc, g);
        s += std::log(static_cast<double>(p)) * e_of((ph1 - std::floor(ph1)) + ph2);
    }
    return s;
}

// Probes sup_{T in [N, N+2]} |U| on a uniform grid; diagnostic, not certified.
inline double sup_U_probe(ExpSumContext ctx, int grid = 64) {
    double best = 0.0;
    for (int i = 0; i <= grid; ++i) {
        ctx.T = static_cast<double>(ctx.N) + 2.0 * i / grid;
        best = std::max(best, std::abs(eval_U(ctx)));
    }
    return best;
}

struct GammaSum {
    double log_sum = 0.0;        // sum of log p over solutions
    std::uint64_t solutions = 0;
};

// Gamma = sum over { p prime, m >= 1 : [p^c] + [m^c] = N, (m, P(z)) = 1 } of
// log p. P(z) is the product of odd primes below z, so even m pass the
// coprimality filter. window_P <= 0 scans the full usable p-range (the
// paper's 1e-9 normalization is bookkeeping, not content, at desk scale).
inline GammaSum eval_Gamma(std::uint64_t N, const Rational& c, std::int64_t z,
                           double window_P = 0.0) {
    certified::PowerPair pow(c);
    std::vector<std::int64_t> small_primes;
    for (std::uint32_t p : primes_up_to(z > 1 ? static_cast<std::uint64_t>(z - 1) : 0))
        if (p > 2) small_primes.push_back(p);

    GammaSum out;
    // [p^c] < N iff p < N^gamma; the certified inverse pins the cutoff.
    std::uint64_t p_hi = window_P > 0 ? static_cast<std::uint64_t>(2 * window_P)
                                      : pow.inverse().floor_pow(N);
    for (std::uint32_t p : primes_up_to(p_hi)) {
        if (window_P > 0 && !(p > window_P && p <= 2 * window_P)) continue;
        std::uint64_t fp = pow.floor_pow(p);
        if (fp >= N) continue;
        auto iv = pow.preimage(N - fp);
        for (std::uint64_t m = iv.lo; m <= iv.hi; ++m) {
            bool coprime = true;
            for (std::int64_t q : small_primes)
                if (m % static_cast<std::uint64_t>(q) == 0) {
                    coprime = false;
                    break;
                }
            if (coprime) {
                out.log_sum += std::log(static_cast<double>(p));
                ++out.solutions;
            }
        }
    }
    return out;
}

// Sigma_j = sum_{d | P(z), d <= D} lambda-(d) sum_p log p *
//           psi(-(N + j - [p^c])^gamma / d), full usable p-range by default.
inline double eval_Sigma(std::uint64_t N, const Rational& c, std::int64_t D, std::int64_t z,
                         int j, double window_P = 0.0) {
    if (j != 0 && j != 1) throw std::invalid_argument("eval_Sigma: j must be 0 or 1");
    certified::PowerPair pow(c);
    const double g = rat_double(pow.gamma());
    auto table = sieve::rosser_weights(sieve::SieveContext::make(D, z));

    std::uint64_t p_hi = window_P > 0 ? static_cast<std::uint64_t>(2 * window_P)
                                      : pow.inverse().floor_pow(N + j);
    std::vector<std::pair<std::uint32_t, std::uint64_t>> ps;
    for (std::uint32_t p : primes_up_to(p_hi)) {
        if (window_P > 0 && !(p > window_P && p <= 2 * window_P)) continue;
        std::uint64_t fp = pow.floor_pow(p);
        if (fp < N + static_cast<std::uint64_t>(j)) ps.emplace_back(p, fp);
    }
    double total = 0.0;
    for (const auto& row : table.rows) {
        if (row.minus == 0) continue;
        double inner = 0.0;
        for (auto [p, fp] : ps) {
            double x = std::pow(static_cast<double>(N + j - fp), g) / row.d;
            inner += std::log(static_cast<double>(p)) * harmonic::psi(-x);
        }
        total += row.minus * inner;
    }
    return total;
}

// ----- inequalities ----------------------------------------------------------

struct WeylCheck {
    double lhs = 0.0;  // |sum z_n|^2
    double rhs = 0.0;
};

// Squared Weyl-van der Corput: |sum z|^2 <= (1 + L/Q) sum_{|q|<Q} (1-|q|/Q)
// Re sum_n z_{n+q} conj(z_n). (The unsquared left side printed in the source
// scales like the square root of the right; the squared form is what holds.)
inline WeylCheck weyl_vdc_check(std::span<const Cplx> z, int Q) {
    if (Q < 1) throw std::invalid_argument("weyl_vdc_check: Q must be >= 1");
    const std::int64_t L = static_cast<std::int64_t>(z.size());
    Cplx total = 0;
    for (const auto& w : z) total += w;
    WeylCheck out;
    out.lhs = std::norm(total);
    double inner = 0.0;
    for (std::int64_t q = -(Q - 1); q <= Q - 1; ++q) {
        Cplx corr = 0;
        for (std::int64_t n = 0; n < L; ++n) {
            std::int64_t nq = n + q;
            if (nq < 0 || nq >= L) continue;
            corr += z[static_cast<std::size_t>(nq)] * std::conj(z[static_cast<std::size_t>(n)]);
        }
        inner += (1.0 - std::fabs(static_cast<double>(q)) / Q) * corr.real();
    }
    out.rhs = (1.0 + static_cast<double>(L) / Q) * inner;
    return out;
}

struct ProbeRow {
    double sigma = 0.0;
    double lambda1 = 0.0;
    double a = 0.0;
    double sum_abs = 0.0;
    double bound = 0.0;
    double ratio = 0.0;  // diagnostic only: the implied constant is unknown
};

// Monomial phases f(x) = (lambda1 a / sigma) (x/a)^sigma on (a, 2a], which
// satisfy |f^(j)| ~ lambda1 a^(1-j).
inline std::vector<ProbeRow> exponent_pair_probe(const pairs::ExponentPair& p, double a,
                                                 std::span<const double> lambda1s,
                                                 std::span<const double> sigmas) {
    pairs::require_valid(p);
    if (!(a >= 2)) throw std::invalid_argument("probe: need a >= 2");
    std::vector<ProbeRow> rows;
    for (double sigma : sigmas) {
        if (sigma == 0.0) throw std::invalid_argument("probe: sigma must be nonzero");
        for (double l1 : lambda1s) {
            Cplx s = 0;
            const long double scale = static_cast<long double>(l1) * a / sigma;
            for (std::uint64_t n = static_cast<std::uint64_t>(a) + 1;
                 n <= static_cast<std::uint64_t>(2 * a); ++n)
                s += e_of(scale * powl(static_cast<long double>(n) / a, sigma));
            ProbeRow row;
            row.sigma = sigma;
            row.lambda1 = l1;
            row.a = a;
            row.sum_abs = std::abs(s);
            row.bound = pairs::vdc_bound(p, l1, a);
            row.ratio = row.sum_abs / row.bound;
            rows.push_back(row);
        }
    }
    return rows;
}

}  // namespace psap::expsum
