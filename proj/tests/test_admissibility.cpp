#include "psap/admissibility.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>

using namespace psap;
using namespace psap::admissibility;

namespace {

const pairs::ExponentPair kPaperPair{Rational(13, 40), Rational(22, 40)};

const Constraint& find_constraint(const ConstraintSystem& cs, const std::string& tag) {
    for (const auto& c : cs.constraints)
        if (c.tag == tag) return c;
    FAIL("missing constraint " + tag);
    throw std::logic_error("unreachable");
}

}  // namespace

TEST_CASE("T2 coefficients collect to the printed exponents for the paper pair") {
    auto cs = build_constraints(kPaperPair);
    const auto& t2 = find_constraint(cs, "T2").lhs;
    CHECK(t2.c_delta == Rational(173, 80));
    CHECK(t2.c_q == Rational(13, 80));
    CHECK(t2.c0 == Rational(53, 40));        // constant term at q = delta = 0
    CHECK(t2.c_gamma == Rational(-7, 16));   // gamma coefficient after collecting
}

TEST_CASE("T2 for the trivial pair has E = 1/4 + 5 gamma / 8") {
    auto cs = build_constraints(pairs::trivial_pair());
    const auto& t2 = find_constraint(cs, "T2").lhs;
    // Constant part: (1 + k/2)(1 - gamma) + E with k = l = 1/2 gives
    // 3/2 - 5 gamma/8.
    CHECK(t2.c0 == Rational(3, 2));
    CHECK(t2.c_gamma == Rational(-5, 8));
    CHECK(t2.c_delta == Rational(9, 4));
    CHECK(t2.c_q == Rational(1, 4));
}

TEST_CASE("constraint system shape and pair validation") {
    auto cs = build_constraints(kPaperPair);
    CHECK(cs.constraints.size() == 10);  // T1, T2, guard, 5 fixed, 2 q-range
    CHECK_THROWS_AS(build_constraints({Rational(2, 3), Rational(2, 3)}), std::invalid_argument);
}

TEST_CASE("max_delta reproduces the closed form at gamma = 97/100") {
    auto res = max_delta(kPaperPair, Rational(97, 100));
    REQUIRE(res.has_value());
    CHECK(res->feasible);
    CHECK(res->delta_sup == Rational(53, 7500));
    CHECK(res->delta_sup == (247 * Rational(97, 100) - 238) / 225);
}

TEST_CASE("max_delta at the boundary and below") {
    auto boundary = max_delta(kPaperPair, Rational(238, 247));
    REQUIRE(boundary.has_value());
    CHECK(boundary->delta_sup == 0);
    CHECK_FALSE(boundary->feasible);

    auto below = max_delta(kPaperPair, Rational(9, 10));
    REQUIRE(below.has_value());
    CHECK(below->delta_sup < 0);
    CHECK_FALSE(below->feasible);

    CHECK_THROWS_AS(max_delta(kPaperPair, Rational(1, 2)), std::invalid_argument);
    CHECK_THROWS_AS(max_delta(kPaperPair, Rational(1)), std::invalid_argument);
}

TEST_CASE("gamma_threshold: paper pair, trivial pair, degenerate pair") {
    CHECK(gamma_threshold(kPaperPair) == Rational(238, 247));
    // The trivial pair recovers the earlier 29/28 theorem's threshold.
    CHECK(gamma_threshold(pairs::trivial_pair()) == Rational(28, 29));
    CHECK(gamma_threshold({Rational(0), Rational(1)}) == 1);
}

TEST_CASE("delta formula and balanced q across 50 exact gammas") {
    const Rational lo(238, 247), hi(1);
    for (int i = 1; i <= 50; ++i) {
        Rational g = lo + (hi - lo) * Rational(i, 51);
        auto res = max_delta(kPaperPair, g);
        REQUIRE(res.has_value());
        Rational expect = (247 * g - 238) / 225;
        CHECK(res->delta_sup == expect);
        auto q = optimal_q(kPaperPair, g, res->delta_sup);
        REQUIRE(q.has_value());
        CHECK(*q == (35 * g - 13 * expect - 26) / 53);
        CHECK(*q == res->q_opt);
        CHECK(*q >= 0);
        CHECK(*q <= g / 3);
    }
}

TEST_CASE("the five fixed constraints are strictly non-binding at the optimum") {
    const Rational lo(238, 247), hi(1);
    for (int i = 1; i <= 50; ++i) {
        Rational g = lo + (hi - lo) * Rational(i, 51);
        auto res = max_delta(kPaperPair, g);
        REQUIRE(res.has_value());
        auto cs = build_constraints(kPaperPair);
        for (const auto& con : cs.constraints) {
            if (con.tag.rfind("O33", 0) != 0) continue;
            Rational lhs = con.lhs.eval(g, res->delta_sup, res->q_opt);
            Rational rhs = con.rhs.eval(g, res->delta_sup, res->q_opt);
            CHECK(lhs < rhs);
        }
        for (const auto& tag : res->binding) CHECK(tag.rfind("O33", 0) != 0);
    }
}

TEST_CASE("optimal_q balances T1 and T2 exactly") {
    Rational g(97, 100);
    Rational d = (247 * g - 238) / 225;
    auto q = optimal_q(kPaperPair, g, d);
    REQUIRE(q.has_value());
    auto cs = build_constraints(kPaperPair);
    const auto& t1 = find_constraint(cs, "T1").lhs;
    const auto& t2 = find_constraint(cs, "T2").lhs;
    CHECK(t1.eval(g, d, *q) == t2.eval(g, d, *q));
    // Infeasible parameters yield the marker.
    CHECK_FALSE(optimal_q(kPaperPair, Rational(9, 10), Rational(1, 10)).has_value());
}

TEST_CASE("max_delta monotone nondecreasing in gamma") {
    Rational prev(-1000);
    for (int i = 0; i <= 24; ++i) {
        Rational g = Rational(238, 247) + (1 - Rational(238, 247)) * Rational(i, 25);
        if (!(g > Rational(1, 2) && g < 1)) continue;
        auto res = max_delta(kPaperPair, g);
        REQUIRE(res.has_value());
        CHECK(res->delta_sup >= prev);
        prev = res->delta_sup;
    }
}

TEST_CASE("LP value is independent of constraint ordering") {
    Rational g(97, 100);
    auto cs = build_constraints(kPaperPair);
    auto base = detail::solve_at(cs, g);
    REQUIRE(base.has_value());
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        auto shuffled = cs;
        std::shuffle(shuffled.constraints.begin(), shuffled.constraints.end(), rng);
        auto res = detail::solve_at(shuffled, g);
        REQUIRE(res.has_value());
        CHECK(res->delta_sup == base->delta_sup);
        CHECK(res->q_opt == base->q_opt);
        CHECK(res->binding == base->binding);
    }
}

TEST_CASE("prime_factor_bound: pinned values and exactness") {
    CHECK(prime_factor_bound(Rational(1)) == 51);
    CHECK(prime_factor_bound(Rational(101, 100)) == 68);
    CHECK(prime_factor_bound(Rational(103, 100)) == 242);
    CHECK_THROWS_AS(prime_factor_bound(Rational(247, 238)), std::invalid_argument);
    CHECK_THROWS_AS(prime_factor_bound(Rational(99, 100)), std::invalid_argument);
}

TEST_CASE("2 gamma / delta equals 450/(247 - 238 c) for sampled c") {
    for (int i = 1; i <= 20; ++i) {
        Rational c = 1 + Rational(i, 600);  // stays below 247/238
        REQUIRE(c < Rational(247, 238));
        Rational g = 1 / c;
        Rational delta = (247 * g - 238) / 225;
        CHECK(2 * g / delta == Rational(450) / (247 - 238 * c));
    }
}

TEST_CASE("search_best_pair finds the BAABAA pair") {
    auto best0 = search_best_pair(0);
    CHECK(best0.pair == pairs::trivial_pair());
    CHECK(best0.threshold == Rational(28, 29));

    auto best6 = search_best_pair(6);
    CHECK(best6.threshold <= Rational(238, 247));
    CHECK(best6.word.letters == "BAABAA");

    auto best8 = search_best_pair(8);
    CHECK(best8.threshold == Rational(238, 247));  // regression: no length-8 word beats it
    CHECK(best8.word.letters == "BAABAA");

    // worker count must not change the result
    auto best8p = search_best_pair(8, 4);
    CHECK(best8p.word.letters == best8.word.letters);
    CHECK(best8p.threshold == best8.threshold);

    CHECK_THROWS_AS(search_best_pair(13), std::invalid_argument);
}

TEST_CASE("pair report JSON carries the headline constants") {
    auto json = pair_report_json(pairs::Word("BAABAA"), kPaperPair);
    CHECK(json.find("\"gamma_threshold\":\"238/247\"") != std::string::npos);
    CHECK(json.find("\"c_threshold\":\"247/238\"") != std::string::npos);
    CHECK(json.find("\"omega33_block_imported\":true") != std::string::npos);
}
