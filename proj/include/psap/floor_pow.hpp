#pragma once

// Certified [n^e] for positive integers n and exact rational exponents
// e = a/b > 0. Strategy:
//   1. If n is a perfect b-th power, n^e is an exact integer; compute it with
//      integer arithmetic.
//   2. Otherwise n^e is irrational. First a one-pow screen: MPFR pow is
//      correctly rounded, so mid = RNDN(n^e_mid) carries error at most
//      0.5 ulp plus the drift from rounding the exponent itself,
//      |n^e_mid - n^e| <= n^e (exp(|e_mid - e| ln n) - 1); both are bounded
//      explicitly and the floor is accepted only when mid clears the nearest
//      integers by more than that bound.
//   3. When the screen is inconclusive, enclose n^e with directed rounding
//      (exponent rounded down/up, pow rounded down/up; monotone for n >= 1),
//      escalating the working precision up to the cap.
//   4. Past the cap, decide k = [n^e] by the exact integer comparison
//      k^b <= n^a < (k+1)^b. That path always decides but is guarded by a
//      size check so it cannot silently chew through gigabit integers;
//      exhaustion raises precision_cap_error, never a wrong value.
//
// The rounded images of the exponent are precomputed once per escalation
// level; instances are immutable after construction and safe to share across
// threads.

#include "psap/common.hpp"
#include "psap/rational.hpp"

#include <gmp.h>
#include <mpfr.h>

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <memory>
#include <string>
#include <vector>

namespace psap::certified {

inline int env_precision_cap(int fallback = 2048) {
    if (const char* s = std::getenv("PSAP_PREC_CAP")) {
        int v = std::atoi(s);
        if (v >= 64) return v;
    }
    return fallback;
}

class CertifiedPower {
  public:
    explicit CertifiedPower(const Rational& exponent, int base_prec = 64, int prec_cap = -1)
        : exp_(exponent),
          prec_cap_(prec_cap > 0 ? prec_cap : env_precision_cap()) {
        if (!(exponent > 0)) throw std::invalid_argument("CertifiedPower: exponent must be > 0");
        num_ = rat_num(exp_);
        den_ = rat_den(exp_);
        den_small_ = den_ <= 64 ? den_.convert_to<std::uint64_t>() : 0;
        exp_dbl_ = rat_double(exp_);
        std::string ns = num_.str(), ds = den_.str();
        for (int prec = std::max(base_prec, 64); prec <= prec_cap_; prec *= 2)
            levels_.push_back(std::make_unique<Level>(prec, ns, ds));
        if (levels_.empty()) levels_.push_back(std::make_unique<Level>(64, ns, ds));
    }

    CertifiedPower(const CertifiedPower&) = delete;
    CertifiedPower& operator=(const CertifiedPower&) = delete;
    CertifiedPower(CertifiedPower&&) = default;
    CertifiedPower& operator=(CertifiedPower&&) = default;

    const Rational& exponent() const { return exp_; }

    // True iff n^e is an integer, i.e. n is a perfect b-th power
    // (a/b in lowest terms). Root is reported when requested.
    bool exact_integer(std::uint64_t n, std::uint64_t* root = nullptr) const {
        if (n == 0) throw std::invalid_argument("CertifiedPower: n must be >= 1");
        if (n == 1) {
            if (root) *root = 1;
            return true;
        }
        if (den_ == 1) {
            if (root) *root = n;
            return true;
        }
        if (den_small_ == 0) return false;  // b > 64: only n = 1 is a b-th power
        std::uint64_t t = static_cast<std::uint64_t>(std::llround(
            std::pow(static_cast<double>(n), 1.0 / static_cast<double>(den_small_))));
        for (std::uint64_t cand = (t > 1 ? t - 1 : 1); cand <= t + 1; ++cand) {
            if (checked_pow_equals(cand, den_small_, n)) {
                if (root) *root = cand;
                return true;
            }
        }
        return false;
    }

    std::uint64_t floor_pow(std::uint64_t n) const {
        if (n == 0) throw std::invalid_argument("floor_pow: n must be >= 1");
        if (n == 1) return 1;

        std::uint64_t root = 0;
        if (exact_integer(n, &root)) {
            BigInt v = boost::multiprecision::pow(BigInt(root), num_.convert_to<unsigned>());
            if (v > BigInt(UINT64_MAX))
                throw precision_cap_error("floor_pow: value overflows 64 bits");
            return v.convert_to<std::uint64_t>();
        }

        std::uint64_t f;
        if (screen_floor(*levels_.front(), n, f)) return f;
        for (const auto& level : levels_) {
            std::uint64_t lo_floor, hi_floor;
            if (enclose_floor(*level, n, lo_floor, hi_floor) && lo_floor == hi_floor)
                return lo_floor;
        }
        return exact_floor(n);
    }

    // Re-derives an enclosure at (at least) twice the base precision and
    // checks k <= n^e < k+1. Used by verification suites.
    bool recheck(std::uint64_t n, std::uint64_t k) const {
        if (n == 1) return k == 1;
        const Level& level = *levels_[levels_.size() > 1 ? 1 : 0];
        std::uint64_t f;
        if (screen_floor(level, n, f)) return f == k;
        std::uint64_t lo_floor, hi_floor;
        if (enclose_floor(level, n, lo_floor, hi_floor) && lo_floor == hi_floor)
            return lo_floor == k;
        // Enclosure stays ambiguous (n^e integral or nearly so): decide exactly.
        return exact_floor(n) == k;
    }

  private:
    // Rounded images of the exponent at one working precision.
    struct Level {
        int prec;
        mpfr_t e_lo, e_hi, e_mid;
        Level(int p, const std::string& num, const std::string& den) : prec(p) {
            mpfr_inits2(prec, e_lo, e_hi, e_mid, static_cast<mpfr_ptr>(nullptr));
            mpfr_t a, b;
            mpfr_inits2(prec, a, b, static_cast<mpfr_ptr>(nullptr));
            mpfr_set_str(a, num.c_str(), 10, MPFR_RNDD);
            mpfr_set_str(b, den.c_str(), 10, MPFR_RNDU);
            mpfr_div(e_lo, a, b, MPFR_RNDD);
            mpfr_set_str(a, num.c_str(), 10, MPFR_RNDU);
            mpfr_set_str(b, den.c_str(), 10, MPFR_RNDD);
            mpfr_div(e_hi, a, b, MPFR_RNDU);
            mpfr_set_str(a, num.c_str(), 10, MPFR_RNDN);
            mpfr_set_str(b, den.c_str(), 10, MPFR_RNDN);
            mpfr_div(e_mid, a, b, MPFR_RNDN);
            mpfr_clears(a, b, static_cast<mpfr_ptr>(nullptr));
        }
        ~Level() { mpfr_clears(e_lo, e_hi, e_mid, static_cast<mpfr_ptr>(nullptr)); }
        Level(const Level&) = delete;
        Level& operator=(const Level&) = delete;
    };

    // One-pow screen. mid = RNDN(n^e_mid) at precision p satisfies
    //   |mid - n^e| <= mid * 2^-p                    (correct rounding)
    //              + n^e * (exp(|e_mid - e| ln n) - 1)
    // and |e_mid - e| <= |e| 2^-p (two roundings in e_mid's construction give
    // another factor absorbed by the safety margin below). Accept floor(mid)
    // only when mid clears both neighbouring integers by 8x that bound.
    bool screen_floor(const Level& level, std::uint64_t n, std::uint64_t& out) const {
        mpfr_t mid, fl;
        mpfr_inits2(level.prec, mid, fl, static_cast<mpfr_ptr>(nullptr));
        mpfr_set_uj(mid, n, MPFR_RNDN);  // exact
        mpfr_pow(mid, mid, level.e_mid, MPFR_RNDN);
        mpfr_floor(fl, mid);
        bool ok = mpfr_fits_uintmax_p(fl, MPFR_RNDZ) != 0;
        if (ok) {
            mpfr_sub(mid, mid, fl, MPFR_RNDN);
            double frac = mpfr_get_d(mid, MPFR_RNDN);
            double value_mag = mpfr_get_d(fl, MPFR_RNDN) + 1.0;
            double rel = std::ldexp(1.0 + 4.0 * exp_dbl_ * std::log(static_cast<double>(n)),
                                    -level.prec);
            double err = 8.0 * rel * value_mag;
            ok = frac > err && frac < 1.0 - err;
            if (ok) out = mpfr_get_uj(fl, MPFR_RNDZ);
        }
        mpfr_clears(mid, fl, static_cast<mpfr_ptr>(nullptr));
        return ok;
    }

    static bool checked_pow_equals(std::uint64_t base, std::uint64_t exp, std::uint64_t target) {
        std::uint64_t acc = 1;
        for (std::uint64_t i = 0; i < exp; ++i) {
            if (base != 0 && acc > target / base) return false;  // would exceed target
            acc *= base;
        }
        return acc == target;
    }

    bool enclose_floor(const Level& level, std::uint64_t n, std::uint64_t& lo_floor,
                       std::uint64_t& hi_floor) const {
        mpfr_t base, lo, hi;
        mpfr_inits2(level.prec, base, lo, hi, static_cast<mpfr_ptr>(nullptr));
        mpfr_set_uj(base, n, MPFR_RNDN);  // exact for 64-bit n
        // n >= 1 makes n^x monotone nondecreasing in x.
        mpfr_pow(lo, base, level.e_lo, MPFR_RNDD);
        mpfr_pow(hi, base, level.e_hi, MPFR_RNDU);
        mpfr_floor(lo, lo);
        mpfr_floor(hi, hi);
        bool fits = mpfr_fits_uintmax_p(lo, MPFR_RNDZ) && mpfr_fits_uintmax_p(hi, MPFR_RNDZ);
        if (fits) {
            lo_floor = mpfr_get_uj(lo, MPFR_RNDZ);
            hi_floor = mpfr_get_uj(hi, MPFR_RNDZ);
        }
        mpfr_clears(base, lo, hi, static_cast<mpfr_ptr>(nullptr));
        return fits;
    }

    std::uint64_t exact_floor(std::uint64_t n) const {
        // Decide via k^b <= n^a. Guard the operand sizes first.
        double bits = num_.convert_to<double>() * std::log2(static_cast<double>(n));
        if (bits > 5e7 || num_ > 1000000 || den_ > 1000000)
            throw precision_cap_error("floor_pow: exact fallback exceeds size guard at n=" +
                                      std::to_string(n));
        unsigned a = num_.convert_to<unsigned>(), b = den_.convert_to<unsigned>();
        BigInt na = boost::multiprecision::pow(BigInt(n), a);
        // Initial candidate from double arithmetic, then correct exactly.
        std::uint64_t k =
            static_cast<std::uint64_t>(std::pow(static_cast<double>(n), rat_double(exp_)));
        if (k == 0) k = 1;
        while (boost::multiprecision::pow(BigInt(k), b) > na) --k;
        while (boost::multiprecision::pow(BigInt(k + 1), b) <= na) ++k;
        return k;
    }

    Rational exp_;
    BigInt num_, den_;
    std::uint64_t den_small_ = 0;  // b when it fits the uint64 fast path, else 0
    double exp_dbl_ = 0.0;
    int prec_cap_;
    std::vector<std::unique_ptr<Level>> levels_;
};

// Forward map n -> [n^c] plus the inverse preimage query.
class PowerPair {
  public:
    explicit PowerPair(const Rational& c, int base_prec = 64, int prec_cap = -1)
        : c_(c), gamma_(1 / c), fwd_(c, base_prec, prec_cap), inv_(gamma_, base_prec, prec_cap) {
        if (!(c > 1 && c < 2)) throw std::invalid_argument("PowerPair: need 1 < c < 2");
    }

    PowerPair(const PowerPair&) = delete;
    PowerPair& operator=(const PowerPair&) = delete;
    PowerPair(PowerPair&&) = default;
    PowerPair& operator=(PowerPair&&) = default;

    const Rational& c() const { return c_; }
    const Rational& gamma() const { return gamma_; }
    const CertifiedPower& forward() const { return fwd_; }
    const CertifiedPower& inverse() const { return inv_; }

    std::uint64_t floor_pow(std::uint64_t n) const { return fwd_.floor_pow(n); }

    struct Interval {
        std::uint64_t lo = 1, hi = 0;  // empty when hi < lo
        bool empty() const { return hi < lo; }
    };

    // {m : [m^c] = v} = [ceil(v^gamma), ceil((v+1)^gamma) - 1]; for c > 1 the
    // interval holds at most one integer. Each endpoint is certified by a
    // floor_pow round trip.
    Interval preimage(std::uint64_t v) const {
        if (v == 0) throw std::invalid_argument("preimage: v must be >= 1");
        Interval iv;
        std::uint64_t f1 = inv_.floor_pow(v);
        iv.lo = inv_.exact_integer(v) ? f1 : f1 + 1;
        std::uint64_t f2 = inv_.floor_pow(v + 1);
        iv.hi = inv_.exact_integer(v + 1) ? f2 - 1 : f2;
        if (!iv.empty()) {
            if (fwd_.floor_pow(iv.lo) != v || fwd_.floor_pow(iv.hi) != v)
                throw std::logic_error("preimage: round-trip certification failed");
        }
        return iv;
    }

  private:
    Rational c_, gamma_;
    CertifiedPower fwd_, inv_;
};

}  // namespace psap::certified
