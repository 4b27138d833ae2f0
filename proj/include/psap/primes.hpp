#pragma once

// Prime-table utilities shared by the sieve, exponential-sum, and scanner
// modules: Eratosthenes/linear sieves for p, spf, mu, Lambda, tau and
// big Omega (prime factors with multiplicity).

#include "psap/common.hpp"

#include <cmath>
#include <cstdint>
#include <vector>

namespace psap {

inline std::vector<std::uint32_t> primes_up_to(std::uint64_t limit) {
    std::vector<std::uint32_t> out;
    if (limit < 2) return out;
    std::vector<bool> comp(limit + 1, false);
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (!comp[i]) {
            out.push_back(static_cast<std::uint32_t>(i));
            for (std::uint64_t j = i * i; j <= limit; j += i) comp[j] = true;
        }
    }
    return out;
}

// Smallest prime factor table; spf[0] = spf[1] = 0.
inline std::vector<std::uint32_t> spf_table(std::uint64_t limit) {
    std::vector<std::uint32_t> spf(limit + 1, 0);
    std::vector<std::uint32_t> primes;
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (spf[i] == 0) {
            spf[i] = static_cast<std::uint32_t>(i);
            primes.push_back(static_cast<std::uint32_t>(i));
        }
        for (std::uint32_t p : primes) {
            if (p > spf[i] || i * p > limit) break;
            spf[i * p] = p;
        }
    }
    return spf;
}

inline std::vector<std::int8_t> mobius_table(std::uint64_t limit) {
    auto spf = spf_table(limit);
    std::vector<std::int8_t> mu(limit + 1, 0);
    if (limit >= 1) mu[1] = 1;
    for (std::uint64_t n = 2; n <= limit; ++n) {
        std::uint64_t p = spf[n], m = n / p;
        mu[n] = (m % p == 0) ? 0 : -mu[m];
    }
    return mu;
}

// Von Mangoldt: log p at prime powers p^k, 0 elsewhere.
inline std::vector<double> von_mangoldt_table(std::uint64_t limit) {
    auto spf = spf_table(limit);
    std::vector<double> lam(limit + 1, 0.0);
    for (std::uint64_t n = 2; n <= limit; ++n) {
        std::uint64_t p = spf[n], m = n;
        while (m % p == 0) m /= p;
        if (m == 1) lam[n] = std::log(static_cast<double>(p));
    }
    return lam;
}

// Omega(n): prime factors counted with multiplicity; Omega(1) = 0.
inline std::vector<std::uint8_t> big_omega_table(std::uint64_t limit,
                                                 std::uint64_t guard_bytes = (1ull << 33)) {
    if (limit + 1 > guard_bytes)
        throw resource_guard_error("big_omega_table: limit exceeds memory budget");
    auto spf = spf_table(limit);
    std::vector<std::uint8_t> omega(limit + 1, 0);
    for (std::uint64_t n = 2; n <= limit; ++n)
        omega[n] = static_cast<std::uint8_t>(omega[n / spf[n]] + 1);
    return omega;
}

inline std::vector<std::uint32_t> divisor_count_table(std::uint64_t limit) {
    std::vector<std::uint32_t> tau(limit + 1, 0);
    for (std::uint64_t d = 1; d <= limit; ++d)
        for (std::uint64_t m = d; m <= limit; m += d) ++tau[m];
    return tau;
}

}  // namespace psap
