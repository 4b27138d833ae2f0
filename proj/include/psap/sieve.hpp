#pragma once

// Rosser-Iwaniec linear-sieve weights of level D over the odd primes below z,
// the linear sieve functions F and f on [2, 3], and the Mertens product /
// weighted sums they control.
//
// For squarefree d = p1...pr with p1 > ... > pr, all pi in (2, z):
//   lambda+(d) = mu(d) iff p1...p_{2l} * p_{2l+1}^3 < D for all 0 <= l <= (r-1)/2
//   lambda-(d) = mu(d) iff p1...p_{2l-1} * p_{2l}^3 < D for all 1 <= l <= r/2
// and both vanish for d > D. These sandwich the Moebius divisor sum.

#include "psap/common.hpp"
#include "psap/primes.hpp"
#include "psap/rational.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <vector>

namespace psap::sieve {

// Euler-Mascheroni constant.
inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

struct SieveContext {
    std::int64_t D = 0;
    std::int64_t z = 0;
    std::vector<std::int64_t> primes;  // 2 < p < z
    double s0 = 0.0;                   // log D / log z

    bool lemma_range() const { return z * z <= D && D <= z * z * z; }

    static SieveContext make(std::int64_t D, std::int64_t z) {
        if (D < 5) throw std::invalid_argument("sieve: need D >= 5");
        if (z < 3) throw std::invalid_argument("sieve: need z >= 3");
        SieveContext ctx;
        ctx.D = D;
        ctx.z = z;
        for (std::uint32_t p : primes_up_to(static_cast<std::uint64_t>(z - 1)))
            if (p > 2) ctx.primes.push_back(p);
        ctx.s0 = std::log(static_cast<double>(D)) / std::log(static_cast<double>(z));
        return ctx;
    }
};

struct WeightTable {
    SieveContext ctx;
    struct Row {
        std::int64_t d;
        std::int8_t plus;
        std::int8_t minus;
    };
    std::vector<Row> rows;  // sorted by d; includes every squarefree d | P(z), d <= D

    std::pair<int, int> at(std::int64_t d) const {
        auto it = std::lower_bound(rows.begin(), rows.end(), d,
                                   [](const Row& r, std::int64_t v) { return r.d < v; });
        if (it == rows.end() || it->d != d) return {0, 0};
        return {it->plus, it->minus};
    }
};

inline WeightTable rosser_weights(const SieveContext& ctx, std::size_t max_entries = 100000000) {
    WeightTable table;
    table.ctx = ctx;
    // Descend over primes in decreasing order so the chain condition can be
    // checked incrementally: prefix[i] = p1...pi.
    std::vector<std::int64_t> desc(ctx.primes.rbegin(), ctx.primes.rend());
    std::vector<std::int64_t> chain;

    auto push = [&](std::int64_t d, int plus, int minus) {
        if (table.rows.size() >= max_entries)
            throw resource_guard_error("rosser_weights: table exceeds entry guard");
        table.rows.push_back({d, static_cast<std::int8_t>(plus),
                              static_cast<std::int8_t>(minus)});
    };

    auto conditions = [&](std::int64_t& plus_ok, std::int64_t& minus_ok) {
        const std::size_t r = chain.size();
        plus_ok = 1;
        minus_ok = 1;
        std::int64_t prefix = 1;  // p1...p_{m-1}
        for (std::size_t m = 1; m <= r; ++m) {
            std::int64_t pm = chain[m - 1];
            bool cond = static_cast<__int128>(prefix) * pm * pm * pm <
                        static_cast<__int128>(ctx.D);
            if (m % 2 == 1 && !cond) plus_ok = 0;   // odd position: lambda+ condition
            if (m % 2 == 0 && !cond) minus_ok = 0;  // even position: lambda-
            prefix *= pm;
        }
    };

    auto rec = [&](auto&& self, std::size_t idx, std::int64_t d) -> void {
        std::int64_t plus_ok, minus_ok;
        conditions(plus_ok, minus_ok);
        int mu = (chain.size() % 2 == 0) ? 1 : -1;
        push(d, plus_ok ? mu : 0, minus_ok ? mu : 0);
        for (std::size_t j = idx; j < desc.size(); ++j) {
            if (d > ctx.D / desc[j]) continue;  // d * p > D: prune
            chain.push_back(desc[j]);
            self(self, j + 1, d * desc[j]);
            chain.pop_back();
        }
    };
    rec(rec, 0, 1);
    std::sort(table.rows.begin(), table.rows.end(),
              [](const auto& a, const auto& b) { return a.d < b.d; });
    return table;
}

struct Sandwich {
    std::int64_t lo, mid, hi;
};

// Divisor sums of lambda-, mu, lambda+ over the z-smooth odd squarefree
// kernel of n. mid is 1 iff n has no prime factor in (2, z).
inline Sandwich sandwich_check(std::uint64_t n, const WeightTable& table) {
    if (n < 1) throw std::invalid_argument("sandwich_check: n must be >= 1");
    std::vector<std::int64_t> kernel_primes;
    for (std::int64_t p : table.ctx.primes)
        if (n % static_cast<std::uint64_t>(p) == 0) kernel_primes.push_back(p);

    Sandwich s{0, kernel_primes.empty() ? 1 : 0, 0};
    const std::size_t subsets = std::size_t(1) << kernel_primes.size();
    for (std::size_t mask = 0; mask < subsets; ++mask) {
        std::int64_t d = 1;
        for (std::size_t i = 0; i < kernel_primes.size(); ++i)
            if (mask & (std::size_t(1) << i)) d *= kernel_primes[i];
        auto [lp, lm] = table.at(d);
        s.hi += lp;
        s.lo += lm;
    }
    return s;
}

inline double linear_sieve_F(double s) {
    if (!(s >= 2.0 && s <= 3.0)) throw std::invalid_argument("F(s): need 2 <= s <= 3");
    return 2.0 * std::exp(kEulerGamma) / s;
}

inline double linear_sieve_f(double s) {
    if (!(s >= 2.0 && s <= 3.0)) throw std::invalid_argument("f(s): need 2 <= s <= 3");
    return 2.0 * std::exp(kEulerGamma) / s * std::log(s - 1.0);
}

struct SieveSums {
    Rational B;        // prod_{2<p<z} (1 - 1/p), exact
    Rational n_plus;   // sum lambda+(d)/d, exact
    Rational n_minus;  // sum lambda-(d)/d, exact
    double s0 = 0.0;
    // Diagnostic only: the F/f comparison carries an unspecified O-constant.
    double ratio_plus = 0.0;   // N+ / (B F(s0))
    double ratio_minus = 0.0;  // N- / (B f(s0))
};

inline SieveSums sieve_sums(const WeightTable& table) {
    SieveSums out;
    out.B = 1;
    for (std::int64_t p : table.ctx.primes) out.B *= Rational(p - 1, p);
    out.n_plus = 0;
    out.n_minus = 0;
    for (const auto& row : table.rows) {
        if (row.plus) out.n_plus += Rational(row.plus, row.d);
        if (row.minus) out.n_minus += Rational(row.minus, row.d);
    }
    out.s0 = table.ctx.s0;
    if (out.s0 >= 2.0 && out.s0 <= 3.0) {
        double B = rat_double(out.B);
        out.ratio_plus = rat_double(out.n_plus) / (B * linear_sieve_F(out.s0));
        double fs = linear_sieve_f(out.s0);
        out.ratio_minus = fs > 0 ? rat_double(out.n_minus) / (B * fs) : 0.0;
    }
    return out;
}

// f(s) at a fixed s slightly above 2 (the epsilon -> 0 convention drives
// s = log D / log z toward 2 from above).
inline double lower_bound_factor(double s = 2.1) {
    if (!(s > 2.0 && s <= 3.0)) throw std::invalid_argument("lower_bound_factor: need s in (2, 3]");
    return linear_sieve_f(s);
}

inline void write_weights_csv(std::ostream& os, const WeightTable& table) {
    os << "d,lambda_plus,lambda_minus\n";
    for (const auto& row : table.rows)
        os << row.d << ',' << int(row.plus) << ',' << int(row.minus) << '\n';
}

inline std::string sums_json(const WeightTable& table) {
    auto s = sieve_sums(table);
    JsonWriter w;
    w.begin_obj();
    w.key("D").value(static_cast<std::int64_t>(table.ctx.D));
    w.key("z").value(static_cast<std::int64_t>(table.ctx.z));
    w.key("s0").value(s.s0);
    w.key("B").value(rat_string(s.B));
    w.key("N_plus").value(rat_string(s.n_plus));
    w.key("N_minus").value(rat_string(s.n_minus));
    w.key("B_float").value(rat_double(s.B));
    w.key("N_plus_float").value(rat_double(s.n_plus));
    w.key("N_minus_float").value(rat_double(s.n_minus));
    w.key("ratio_plus").value(s.ratio_plus);
    w.key("ratio_minus").value(s.ratio_minus);
    w.key("table_size").value(static_cast<std::uint64_t>(table.rows.size()));
    w.end_obj();
    return w.str();
}

}  // namespace psap::sieve
