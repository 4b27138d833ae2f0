#pragma once

// Linear constraint system in (gamma, delta, q) governing the admissible
// sieve level for a given exponent pair, and the exact two-variable LP that
// maximizes delta at fixed gamma.
//
// Every term of the two bilinear-sum bounds must fall strictly below the
// main-term exponent 2*gamma - 1. For a pair (kappa, lambda) the two
// pair-dependent constraints are
//   T1:  1 + 2*delta - q/2                                   < 2*gamma - 1
//   T2:  (kappa/2) q + (2 + kappa/2) delta
//        + (1 + kappa/2)(1 - gamma) + E(kappa, lambda, gamma) < 2*gamma - 1
// with E = kappa/2 + gamma*(3 + lambda - 2*kappa)/4, which for
// (13/40, 11/20) collects to (13/80) q + (173/80) delta + 53/40 - 7*gamma/16.
// A fixed block of five further constraints (imported bilinear estimates) and
// the window 0 <= q <= gamma/3 complete the system. All strict constraints
// have positive delta coefficient, so the supremum of delta over the open
// region equals the maximum over its closure, and the LP is solved exactly by
// vertex enumeration over pairwise constraint intersections.

#include "psap/common.hpp"
#include "psap/exponent_pairs.hpp"
#include "psap/rational.hpp"

#include <algorithm>
#include <atomic>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace psap::admissibility {

using pairs::ExponentPair;
using pairs::Word;

// c_gamma*gamma + c_delta*delta + c_q*q + c0, exact coefficients.
struct LinearForm {
    Rational c_gamma, c_delta, c_q, c0;

    Rational eval(const Rational& gamma, const Rational& delta, const Rational& q) const {
        return c_gamma * gamma + c_delta * delta + c_q * q + c0;
    }
};

enum class Sense { StrictLess, LessEq };

struct Constraint {
    std::string tag;
    LinearForm lhs;
    Sense sense;
    LinearForm rhs;
};

struct ConstraintSystem {
    ExponentPair pair;
    std::vector<Constraint> constraints;
};

inline ConstraintSystem build_constraints(const ExponentPair& p) {
    pairs::require_valid(p);
    const Rational k = p.kappa, l = p.lambda;
    const Rational half(1, 2);
    const LinearForm target{2, 0, 0, -1};  // 2*gamma - 1

    ConstraintSystem cs{p, {}};
    auto add = [&](std::string tag, LinearForm lhs, Sense s, LinearForm rhs) {
        cs.constraints.push_back({std::move(tag), lhs, s, rhs});
    };

    add("T1", {0, 2, Rational(-1, 2), 1}, Sense::StrictLess, target);

    // (1 + k/2)(1 - gamma) + k/2 + gamma*(3 + l - 2k)/4, plus q and delta terms.
    LinearForm t2;
    t2.c_q = k / 2;
    t2.c_delta = 2 + k / 2;
    t2.c_gamma = -(1 + k / 2) + (3 + l - 2 * k) / 4;
    t2.c0 = (1 + k / 2) + k / 2;
    add("T2", t2, Sense::StrictLess, target);

    // Reciprocal term of the pair bound; weaker than T1 for gamma < 1 but kept
    // as a guard for exotic pairs.
    add("T1-reciprocal", {Rational(1, 4), 2, Rational(-1, 2), half}, Sense::StrictLess, target);

    // Fixed imported block (independent of the pair).
    add("O33-a", {1, 1, Rational(-1, 2), 0}, Sense::StrictLess, target);
    add("O33-b", {Rational(5, 8), 1, Rational(1, 4), Rational(1, 4)}, Sense::StrictLess, target);
    add("O33-c", {Rational(7, 8), Rational(5, 4), Rational(-1, 4), 0}, Sense::StrictLess, target);
    add("O33-d", {Rational(5, 6), 1, Rational(1, 12), Rational(1, 12)}, Sense::StrictLess,
        target);
    add("O33-e", {Rational(23, 24), Rational(13, 12), Rational(-1, 12), 0}, Sense::StrictLess,
        target);

    // 0 <= q <= gamma/3.
    add("q-lo", {0, 0, -1, 0}, Sense::LessEq, {0, 0, 0, 0});
    add("q-hi", {0, 0, 1, 0}, Sense::LessEq, {Rational(1, 3), 0, 0, 0});
    return cs;
}

struct LpResult {
    Rational delta_sup;  // supremum of delta over the open region
    Rational q_opt;
    bool feasible = false;  // true iff delta_sup > 0
    std::vector<std::string> binding;
};

namespace detail {

// One constraint at fixed gamma: a*delta + b*q <= c.
struct Row {
    Rational a, b, c;
    const Constraint* src;
};

inline std::vector<Row> substitute_gamma(const ConstraintSystem& cs, const Rational& gamma) {
    std::vector<Row> rows;
    rows.reserve(cs.constraints.size());
    for (const auto& con : cs.constraints) {
        Row r;
        r.a = con.lhs.c_delta - con.rhs.c_delta;
        r.b = con.lhs.c_q - con.rhs.c_q;
        r.c = (con.rhs.c_gamma - con.lhs.c_gamma) * gamma + (con.rhs.c0 - con.lhs.c0);
        r.src = &con;
        rows.push_back(std::move(r));
    }
    return rows;
}

// Max delta over the closure by vertex enumeration; q is confined to
// [0, gamma/3] so the optimum is attained at an intersection of two rows.
inline std::optional<LpResult> solve_closure(const std::vector<Row>& rows) {
    std::optional<LpResult> best;
    const std::size_t n = rows.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            Rational det = rows[i].a * rows[j].b - rows[j].a * rows[i].b;
            if (det == 0) continue;
            Rational delta = (rows[i].c * rows[j].b - rows[j].c * rows[i].b) / det;
            Rational q = (rows[i].a * rows[j].c - rows[j].a * rows[i].c) / det;
            bool ok = true;
            for (const auto& r : rows)
                if (r.a * delta + r.b * q > r.c) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            if (!best || delta > best->delta_sup ||
                (delta == best->delta_sup && q < best->q_opt)) {
                LpResult res;
                res.delta_sup = delta;
                res.q_opt = q;
                for (const auto& r : rows)
                    if (r.a * delta + r.b * q == r.c) res.binding.push_back(r.src->tag);
                std::sort(res.binding.begin(), res.binding.end());
                best = std::move(res);
            }
        }
    }
    return best;
}

inline std::optional<LpResult> solve_at(const ConstraintSystem& cs, const Rational& gamma) {
    auto res = solve_closure(substitute_gamma(cs, gamma));
    if (res) res->feasible = res->delta_sup > 0;
    return res;
}

}  // namespace detail

// Supremum of delta subject to every strict constraint holding with margin,
// at fixed gamma. Returns nullopt only if even the closure is empty (cannot
// happen for valid pairs since q = 0, delta -> -inf always qualifies);
// feasible is false when the supremum is <= 0.
inline std::optional<LpResult> max_delta(const ExponentPair& p, const Rational& gamma) {
    if (!(gamma > Rational(1, 2) && gamma < 1))
        throw std::invalid_argument("max_delta: gamma must lie in (1/2, 1)");
    return detail::solve_at(build_constraints(p), gamma);
}

// Infimum of gamma with max_delta > 0, exact. The LP value is concave and
// nondecreasing in gamma, so its zero crossing is unique when the pair is
// feasible anywhere; the crossing is a gamma at which some vertex of the
// system has delta = 0, and every vertex is an intersection of two rows whose
// right-hand sides are affine in gamma. Collect those candidate roots and
// keep the one where the exact LP value is zero. Returns 1 if no gamma < 1
// is feasible.
inline Rational gamma_threshold(const ExponentPair& p) {
    ConstraintSystem cs = build_constraints(p);
    auto at_one = detail::solve_at(cs, 1);
    if (!at_one || at_one->delta_sup <= 0) return 1;

    auto rows0 = detail::substitute_gamma(cs, 0);
    auto rows1 = detail::substitute_gamma(cs, 1);
    std::set<Rational> candidates;
    const std::size_t n = rows0.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            Rational det = rows0[i].a * rows0[j].b - rows0[j].a * rows0[i].b;
            if (det == 0) continue;
            // delta(gamma) = A + B*gamma at this vertex.
            Rational A = (rows0[i].c * rows0[j].b - rows0[j].c * rows0[i].b) / det;
            Rational A1 = (rows1[i].c * rows1[j].b - rows1[j].c * rows1[i].b) / det;
            Rational B = A1 - A;
            if (B == 0) continue;
            Rational g = -A / B;
            if (g > Rational(1, 2) && g < 1) candidates.insert(g);
        }
    }
    std::optional<Rational> threshold;
    for (const Rational& g : candidates) {
        auto res = detail::solve_at(cs, g);
        if (res && res->delta_sup == 0) {
            if (!threshold || g > *threshold) threshold = g;
        }
    }
    if (!threshold) throw std::logic_error("gamma_threshold: no exact zero crossing found");
    return *threshold;
}

// The q balancing T1 against T2 at the given (gamma, delta). For
// (13/40, 11/20) this is (35*gamma - 13*delta - 26)/53. Returns nullopt when
// the balanced point violates the system (infeasible parameters).
inline std::optional<Rational> optimal_q(const ExponentPair& p, const Rational& gamma,
                                         const Rational& delta) {
    ConstraintSystem cs = build_constraints(p);
    const LinearForm *t1 = nullptr, *t2 = nullptr;
    for (const auto& c : cs.constraints) {
        if (c.tag == "T1") t1 = &c.lhs;
        if (c.tag == "T2") t2 = &c.lhs;
    }
    Rational cq = t1->c_q - t2->c_q;
    if (cq == 0) return std::nullopt;
    Rational rhs = (t2->c_gamma - t1->c_gamma) * gamma + (t2->c_delta - t1->c_delta) * delta +
                   (t2->c0 - t1->c0);
    Rational q = rhs / cq;
    for (const auto& r : detail::substitute_gamma(cs, gamma))
        if (r.a * delta + r.b * q > r.c) return std::nullopt;
    return q;
}

// floor(450 / (247 - 238 c)) + 1, exact before the floor.
inline std::int64_t prime_factor_bound(const Rational& c) {
    if (!(c >= 1 && c < Rational(247, 238)))
        throw std::invalid_argument("prime_factor_bound: need 1 <= c < 247/238");
    Rational v = Rational(450) / (247 - 238 * c);
    return rat_floor(v).convert_to<std::int64_t>() + 1;
}

struct SearchResult {
    Word word;
    ExponentPair pair;
    Rational threshold;
};

// Minimize gamma_threshold over all pairs reachable by words of length
// <= max_word_len; ties broken by shorter, then lexicographically least word.
// Thresholds for different pairs are independent, so the search parallelizes;
// the reduction is a total order on (threshold, word length, word), which
// makes the result worker-count independent.
inline SearchResult search_best_pair(int max_word_len, int workers = 1) {
    if (max_word_len < 0 || max_word_len > 12)
        throw std::invalid_argument("search_best_pair: max_word_len must be in [0, 12]");
    auto candidates = pairs::enumerate_pairs(max_word_len);
    std::vector<Rational> thresholds(candidates.size());

    workers = std::max(1, std::min<int>(workers, static_cast<int>(candidates.size())));
    if (workers == 1) {
        for (std::size_t i = 0; i < candidates.size(); ++i)
            thresholds[i] = gamma_threshold(candidates[i].pair);
    } else {
        std::atomic<std::size_t> next{0};
        auto work = [&]() {
            while (true) {
                std::size_t i = next.fetch_add(1);
                if (i >= candidates.size()) return;
                thresholds[i] = gamma_threshold(candidates[i].pair);
            }
        };
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }

    std::size_t best = 0;
    for (std::size_t i = 1; i < candidates.size(); ++i) {
        const auto better = [&](std::size_t a, std::size_t b) {
            if (thresholds[a] != thresholds[b]) return thresholds[a] < thresholds[b];
            if (candidates[a].word.size() != candidates[b].word.size())
                return candidates[a].word.size() < candidates[b].word.size();
            return candidates[a].word.letters < candidates[b].word.letters;
        };
        if (better(i, best)) best = i;
    }
    return {candidates[best].word, candidates[best].pair, thresholds[best]};
}

// Report for one pair: threshold, c-threshold, delta formula samples, and the
// binding constraints at a representative gamma. The fixed O33 block is
// imported verbatim from the (13/40, 11/20) analysis, so thresholds for other
// pairs are conditional on it; the flag records that.
inline std::string pair_report_json(const Word& word, const ExponentPair& p) {
    Rational th = gamma_threshold(p);
    JsonWriter w;
    w.begin_obj();
    w.key("word").value(word.letters);
    w.key("kappa").value(rat_string(p.kappa));
    w.key("lambda").value(rat_string(p.lambda));
    w.key("gamma_threshold").value(rat_string(th));
    if (th < 1)
        w.key("c_threshold").value(rat_string(1 / th));
    else
        w.key("c_threshold").value(rat_string(Rational(1)));
    w.key("omega33_block_imported").value(true);
    w.key("delta_formula_samples").begin_arr();
    if (th < 1) {
        for (int i = 1; i <= 5; ++i) {
            Rational g = th + (1 - th) * Rational(i, 6);
            auto res = max_delta(p, g);
            w.begin_obj();
            w.key("gamma").value(rat_string(g));
            w.key("delta_max").value(rat_string(res->delta_sup));
            w.key("q_opt").value(rat_string(res->q_opt));
            w.end_obj();
        }
    }
    w.end_arr();
    w.key("binding_constraints").begin_arr();
    if (th < 1) {
        Rational g = th + (1 - th) / 2;
        auto res = max_delta(p, g);
        for (const auto& t : res->binding) w.value(t);
    }
    w.end_arr();
    w.end_obj();
    return w.str();
}

}  // namespace psap::admissibility
