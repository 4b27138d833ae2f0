#pragma once

// Sawtooth psi, the Vaaler trigonometric approximation with Fejer majorant,
// the box-spline smoothing function theta and its shifted family forming a
// partition of unity, and the elementary interval-counting identity.

#include "psap/common.hpp"

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <vector>

namespace psap::harmonic {

inline constexpr double kPi = std::numbers::pi;

inline double frac(double x) { return x - std::floor(x); }

// psi(t) = 1/2 - {t}.
inline double psi(double x) { return 0.5 - frac(x); }

inline std::complex<double> unit_e(double x) {
    double t = 2.0 * kPi * frac(x);
    return {std::cos(t), std::sin(t)};
}

// Vaaler's extremal approximation of psi of degree H:
//   main coefficients  a_h = J(h/(H+1)) / (2 pi i h),  1 <= |h| <= H,
//   majorant           b_h = (1 - |h|/(H+1)) / (2H+2), |h| <= H,
// where J(t) = pi t (1-|t|) cot(pi t) + |t|. The majorant is a scaled Fejer
// kernel, so sum b_h e(hx) >= 0 pointwise and dominates |psi - main sum|.
struct VaalerApprox {
    int H = 0;
    std::vector<double> taper;  // taper[h-1] = J(h/(H+1))
    std::vector<double> b;      // b[h] for h = 0..H

    // |a_h| <= main_decay_constant / |h|, b_h <= majorant_decay_constant / H.
    static constexpr double main_decay_constant = 1.0 / (2.0 * kPi);
    static constexpr double majorant_decay_constant = 0.5;

    std::complex<double> a(int h) const {
        if (h == 0 || std::abs(h) > H) throw std::invalid_argument("a_h: need 1 <= |h| <= H");
        double mag = taper[static_cast<std::size_t>(std::abs(h)) - 1] /
                     (2.0 * kPi * std::abs(h));
        return {0.0, h > 0 ? -mag : mag};  // (2 pi i h)^-1 is purely imaginary
    }
    double b_at(int h) const {
        if (std::abs(h) > H) throw std::invalid_argument("b_h: need |h| <= H");
        return b[static_cast<std::size_t>(std::abs(h))];
    }

    // sum_{0 < |h| <= H} a_h e(hx) = sum_h J_h sin(2 pi h x)/(pi h).
    double main_sum(double x) const {
        double s = 0.0;
        for (int h = 1; h <= H; ++h)
            s += taper[static_cast<std::size_t>(h) - 1] * std::sin(2.0 * kPi * h * x) /
                 (kPi * h);
        return s;
    }
    // sum_{|h| <= H} b_h e(hx), real by symmetry and nonnegative (Fejer).
    double majorant(double x) const {
        double s = b[0];
        for (int h = 1; h <= H; ++h)
            s += 2.0 * b[static_cast<std::size_t>(h)] * std::cos(2.0 * kPi * h * x);
        return s;
    }
};

inline double vaaler_taper(double t) {
    t = std::fabs(t);
    if (t == 0.0) return 1.0;
    if (t >= 1.0) return 0.0;
    return kPi * t * (1.0 - t) / std::tan(kPi * t) + t;
}

inline VaalerApprox vaaler(int H) {
    if (H < 1) throw std::invalid_argument("vaaler: H must be >= 1");
    VaalerApprox v;
    v.H = H;
    v.taper.resize(static_cast<std::size_t>(H));
    v.b.resize(static_cast<std::size_t>(H) + 1);
    for (int h = 1; h <= H; ++h)
        v.taper[static_cast<std::size_t>(h) - 1] = vaaler_taper(h / (H + 1.0));
    for (int h = 0; h <= H; ++h)
        v.b[static_cast<std::size_t>(h)] = (1.0 - h / (H + 1.0)) / (2.0 * H + 2.0);
    return v;
}

// Periodic smoothing function: the indicator of [alpha, beta] convolved with
// the r-fold self-convolution of a unit-mass box of width Delta/r. Pointwise
// values come from the Irwin-Hall piecewise polynomial; Fourier coefficients
// from the closed form
//   g(m) = (e(-m alpha) - e(-m beta)) / (2 pi i m) * sinc(pi m Delta / r)^r.
class SmoothTheta {
  public:
    // Relaxed domain: enough for the construction itself. The Lemma-shaped
    // entry point below additionally demands Delta < 1/4.
    SmoothTheta(double alpha, double beta, double delta, int r)
        : alpha_(alpha), beta_(beta), delta_(delta), r_(r) {
        if (!(r >= 1 && r <= 48)) throw std::invalid_argument("theta: r out of range [1, 48]");
        double len = beta - alpha;
        if (!(delta > 0 && delta <= len && len <= 1 - delta))
            throw std::invalid_argument("theta: need 0 < Delta <= beta - alpha <= 1 - Delta");
        binom_.assign(static_cast<std::size_t>(r) + 1, 1.0);
        for (int k = 1; k <= r; ++k)
            binom_[static_cast<std::size_t>(k)] =
                binom_[static_cast<std::size_t>(k) - 1] * (r - k + 1) / k;
        fact_r_ = 1.0;
        for (int k = 2; k <= r; ++k) fact_r_ *= k;
    }

    double alpha() const { return alpha_; }
    double beta() const { return beta_; }
    double delta() const { return delta_; }
    int order() const { return r_; }

    double operator()(double x) const {
        // Reduce x - alpha into [-Delta/2, 1 - Delta/2); theta vanishes
        // outside the first Delta + (beta - alpha) of that window.
        double t = x - alpha_ + delta_ / 2.0;
        t -= std::floor(t);
        t -= delta_ / 2.0;
        return kernel_cdf(t) - kernel_cdf(t - (beta_ - alpha_));
    }

    std::complex<double> fourier(std::int64_t m) const {
        if (m == 0) return {beta_ - alpha_, 0.0};
        std::complex<double> ind =
            (unit_e(-static_cast<double>(m) * alpha_) - unit_e(-static_cast<double>(m) * beta_)) /
            std::complex<double>(0.0, 2.0 * kPi * static_cast<double>(m));
        double u = kPi * static_cast<double>(m) * delta_ / r_;
        return ind * std::pow(std::sin(u) / u, r_);
    }

    // min(beta - alpha, 1/(pi|m|), (1/(pi|m|)) (r/(pi|m| Delta))^r) for m != 0.
    double fourier_bound(std::int64_t m) const {
        double am = std::fabs(static_cast<double>(m));
        double b1 = beta_ - alpha_;
        double b2 = 1.0 / (kPi * am);
        double b3 = b2 * std::pow(r_ / (kPi * am * delta_), r_);
        return std::min(b1, std::min(b2, b3));
    }

  private:
    // CDF of the centered r-fold box convolution of total width Delta.
    double kernel_cdf(double u) const {
        double t = r_ * u / delta_ + r_ / 2.0;  // Irwin-Hall coordinate in [0, r]
        if (t <= 0.0) return 0.0;
        if (t >= r_) return 1.0;
        if (2.0 * t > r_) return 1.0 - irwin_hall(r_ - t);
        return irwin_hall(t);
    }
    double irwin_hall(double t) const {
        double s = 0.0, sign = 1.0;
        int kmax = static_cast<int>(std::floor(t));
        for (int k = 0; k <= kmax; ++k) {
            s += sign * binom_[static_cast<std::size_t>(k)] * std::pow(t - k, r_);
            sign = -sign;
        }
        return s / fact_r_;
    }

    double alpha_, beta_, delta_;
    int r_;
    std::vector<double> binom_;
    double fact_r_;
};

// Lemma-shaped constructor: rejects parameters outside
// 0 < Delta < 1/4, Delta <= beta - alpha <= 1 - Delta.
inline SmoothTheta smooth_theta(double alpha, double beta, double delta, int r) {
    if (!(delta > 0 && delta < 0.25))
        throw std::invalid_argument("smooth_theta: need 0 < Delta < 1/4");
    return SmoothTheta(alpha, beta, delta, r);
}

// The 2Z shifts theta_z(x) = theta(x - z/(2Z)) of the base window
// [-1/(4Z), 1/(4Z)] with Delta = 1/(2Z); the shifted boxes tile the period,
// so sum_z theta_z == 1.
struct ThetaFamily {
    int Z = 0;
    int r = 0;
    SmoothTheta base;

    double member(int z, double x) const { return base(x - z / (2.0 * Z)); }
    std::complex<double> g(int z, std::int64_t m) const {
        return base.fourier(m) * unit_e(-static_cast<double>(m) * z / (2.0 * Z));
    }
    double partition_sum(double x) const {
        double s = 0.0;
        for (int z = 0; z < 2 * Z; ++z) s += member(z, x);
        return s;
    }
};

inline ThetaFamily theta_family(int Z, int r) {
    if (Z < 1) throw std::invalid_argument("theta_family: Z must be >= 1");
    return {Z, r, SmoothTheta(-1.0 / (4 * Z), 1.0 / (4 * Z), 1.0 / (2 * Z), r)};
}

struct CountingIdentity {
    std::int64_t count;     // # integers in [a, b)
    double rhs;             // b - a - psi(-b) + psi(-a)
    bool integer_endpoint;  // psi at integers makes the identity convention-sensitive
};

// sum_{a <= n < b} 1 = [-a] - [-b] = b - a - psi(-b) + psi(-a).
inline CountingIdentity counting_identity_check(double a, double b) {
    if (!(a < b)) throw std::invalid_argument("counting_identity_check: need a < b");
    auto near_int = [](double x) { return std::fabs(x - std::nearbyint(x)) < 1e-12; };
    CountingIdentity out{};
    out.count = static_cast<std::int64_t>(std::floor(-a)) -
                static_cast<std::int64_t>(std::floor(-b));
    out.rhs = (b - a) - psi(-b) + psi(-a);
    out.integer_endpoint = near_int(a) || near_int(b);
    return out;
}

// Plot-ready dump of (x, psi, approximation, majorant).
inline void write_vaaler_csv(std::ostream& os, const VaalerApprox& v, int points) {
    os << "x,psi,approx,majorant\n";
    for (int i = 0; i < points; ++i) {
        double x = static_cast<double>(i) / points;
        os << format_double(x) << ',' << format_double(psi(x)) << ','
           << format_double(v.main_sum(x)) << ',' << format_double(v.majorant(x)) << '\n';
    }
}

inline void write_theta_csv(std::ostream& os, const ThetaFamily& f, int points) {
    os << "x,theta_0,partition_sum\n";
    for (int i = 0; i < points; ++i) {
        double x = static_cast<double>(i) / points;
        os << format_double(x) << ',' << format_double(f.member(0, x)) << ','
           << format_double(f.partition_sum(x)) << '\n';
    }
}

}  // namespace psap::harmonic
