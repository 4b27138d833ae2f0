#pragma once

// High-precision reference evaluation of the W and U sums (MPFR, default 256
// bits). This is a separate arithmetic route from the long-double evaluators
// in expsum_lab.hpp; the test suite compares the two, and the CLI can report
// the difference as a diagnostic.

#include "psap/expsum_lab.hpp"
#include "psap/floor_pow.hpp"
#include "psap/primes.hpp"

#include <mpfr.h>

#include <complex>
#include <cstdint>

namespace psap::reference {

class HpEvaluator {
  public:
    explicit HpEvaluator(const Rational& c, int prec = 256) : c_(c), prec_(prec) {
        mpfr_inits2(prec_, c_mp_, g_mp_, t1_, t2_, t3_, acc_re_, acc_im_, two_pi_,
                    static_cast<mpfr_ptr>(nullptr));
        std::string num = rat_num(c).str(), den = rat_den(c).str();
        mpfr_set_str(t1_, num.c_str(), 10, MPFR_RNDN);
        mpfr_set_str(t2_, den.c_str(), 10, MPFR_RNDN);
        mpfr_div(c_mp_, t1_, t2_, MPFR_RNDN);
        mpfr_div(g_mp_, t2_, t1_, MPFR_RNDN);
        mpfr_const_pi(two_pi_, MPFR_RNDN);
        mpfr_mul_ui(two_pi_, two_pi_, 2, MPFR_RNDN);
    }
    ~HpEvaluator() {
        mpfr_clears(c_mp_, g_mp_, t1_, t2_, t3_, acc_re_, acc_im_, two_pi_,
                    static_cast<mpfr_ptr>(nullptr));
    }
    HpEvaluator(const HpEvaluator&) = delete;
    HpEvaluator& operator=(const HpEvaluator&) = delete;

    std::complex<double> eval_W(const expsum::ExpSumContext& ctx,
                                const certified::PowerPair& pow) {
        mpfr_set_zero(acc_re_, 1);
        mpfr_set_zero(acc_im_, 1);
        for (std::uint32_t p : primes_up_to(static_cast<std::uint64_t>(2 * ctx.P))) {
            if (!(p > ctx.P && p <= 2 * ctx.P)) continue;
            std::uint64_t fp = pow.floor_pow(p);
            if (fp >= ctx.N + static_cast<std::uint64_t>(ctx.j))
                throw std::invalid_argument("hp eval_W: N + j - [p^c] <= 0 in window");
            // x = (N + j - [p^c])^gamma, phase = (h/d) x
            mpfr_set_uj(t1_, ctx.N + static_cast<std::uint64_t>(ctx.j) - fp, MPFR_RNDN);
            mpfr_pow(t1_, t1_, g_mp_, MPFR_RNDN);
            mpfr_mul_si(t1_, t1_, ctx.h, MPFR_RNDN);
            mpfr_div_si(t1_, t1_, ctx.d, MPFR_RNDN);
            accumulate(p, t1_);
        }
        return result();
    }

    std::complex<double> eval_U(const expsum::ExpSumContext& ctx) {
        mpfr_set_zero(acc_re_, 1);
        mpfr_set_zero(acc_im_, 1);
        for (std::uint32_t p : primes_up_to(static_cast<std::uint64_t>(2 * ctx.P))) {
            if (!(p > ctx.P && p <= 2 * ctx.P)) continue;
            // t1 = r p^c + (h/d) (T - p^c)^gamma
            mpfr_set_uj(t2_, p, MPFR_RNDN);
            mpfr_pow(t2_, t2_, c_mp_, MPFR_RNDN);  // p^c
            mpfr_set_d(t3_, ctx.T, MPFR_RNDN);
            mpfr_sub(t3_, t3_, t2_, MPFR_RNDN);
            mpfr_pow(t3_, t3_, g_mp_, MPFR_RNDN);
            mpfr_mul_si(t3_, t3_, ctx.h, MPFR_RNDN);
            mpfr_div_si(t3_, t3_, ctx.d, MPFR_RNDN);
            mpfr_mul_si(t2_, t2_, ctx.r, MPFR_RNDN);
            mpfr_add(t1_, t2_, t3_, MPFR_RNDN);
            accumulate(p, t1_);
        }
        return result();
    }

  private:
    void accumulate(std::uint32_t p, mpfr_t phase) {
        mpfr_frac(phase, phase, MPFR_RNDN);  // reduce mod 1 before scaling
        mpfr_mul(phase, phase, two_pi_, MPFR_RNDN);
        mpfr_t s, c, lg;
        mpfr_inits2(prec_, s, c, lg, static_cast<mpfr_ptr>(nullptr));
        mpfr_sin_cos(s, c, phase, MPFR_RNDN);
        mpfr_set_uj(lg, p, MPFR_RNDN);
        mpfr_log(lg, lg, MPFR_RNDN);
        mpfr_mul(c, c, lg, MPFR_RNDN);
        mpfr_mul(s, s, lg, MPFR_RNDN);
        mpfr_add(acc_re_, acc_re_, c, MPFR_RNDN);
        mpfr_add(acc_im_, acc_im_, s, MPFR_RNDN);
        mpfr_clears(s, c, lg, static_cast<mpfr_ptr>(nullptr));
    }
    std::complex<double> result() {
        return {mpfr_get_d(acc_re_, MPFR_RNDN), mpfr_get_d(acc_im_, MPFR_RNDN)};
    }

    Rational c_;
    int prec_;
    mpfr_t c_mp_, g_mp_, t1_, t2_, t3_, acc_re_, acc_im_, two_pi_;
};

}  // namespace psap::reference
