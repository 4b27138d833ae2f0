#pragma once

// Exact calculus of van der Corput exponent pairs. The A and B processes are
//   A(k, l) = (k/(2k+2), (k+l+1)/(2k+2))
//   B(k, l) = (l - 1/2, k + 1/2)
// with B an involution. Words over {A, B} act on the trivial pair (1/2, 1/2)
// with the rightmost letter applied first, so "BAABAA" means B A A B A A in
// composition order and lands on (13/40, 11/20).

#include "psap/rational.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace psap::pairs {

struct ExponentPair {
    Rational kappa;
    Rational lambda;

    bool valid() const {
        return kappa >= 0 && kappa <= Rational(1, 2) && lambda >= Rational(1, 2) &&
               lambda <= 1 && kappa + lambda <= 1;
    }
    bool operator==(const ExponentPair& o) const {
        return kappa == o.kappa && lambda == o.lambda;
    }
    bool operator<(const ExponentPair& o) const {
        if (kappa != o.kappa) return kappa < o.kappa;
        return lambda < o.lambda;
    }
};

inline ExponentPair trivial_pair() { return {Rational(1, 2), Rational(1, 2)}; }

inline void require_valid(const ExponentPair& p) {
    if (!p.valid())
        throw std::invalid_argument("not an exponent pair: (" + rat_string(p.kappa) + ", " +
                                    rat_string(p.lambda) + ")");
}

inline ExponentPair a_process(const ExponentPair& p) {
    require_valid(p);
    Rational den = 2 * p.kappa + 2;
    return {p.kappa / den, (p.kappa + p.lambda + 1) / den};
}

inline ExponentPair b_process(const ExponentPair& p) {
    require_valid(p);
    return {p.lambda - Rational(1, 2), p.kappa + Rational(1, 2)};
}

struct Word {
    std::string letters;  // over {'A', 'B'}

    Word() = default;
    explicit Word(std::string s) : letters(std::move(s)) {
        for (char c : letters)
            if (c != 'A' && c != 'B') throw std::invalid_argument("word letters must be A or B");
    }

    // B is an involution, so "BB" cancels.
    Word reduced() const {
        std::string out;
        for (char c : letters) {
            if (c == 'B' && !out.empty() && out.back() == 'B')
                out.pop_back();
            else
                out += c;
        }
        return Word(out);
    }
    bool is_reduced() const { return letters.find("BB") == std::string::npos; }
    std::size_t size() const { return letters.size(); }
};

// Rightmost letter applies first.
inline ExponentPair apply_word(const Word& w, const ExponentPair& seed) {
    require_valid(seed);
    ExponentPair p = seed;
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
        p = (*it == 'A') ? a_process(p) : b_process(p);
    return p;
}

struct WordPair {
    Word word;
    ExponentPair pair;
};

// All reduced words of length <= max_len applied to (1/2, 1/2), deduplicated
// by the resulting pair; a pair keeps its shortest (then lexicographically
// least) word. Order: by word length, then lexicographic.
inline std::vector<WordPair> enumerate_pairs(int max_len) {
    if (max_len < 0) throw std::invalid_argument("enumerate_pairs: max_len must be >= 0");
    std::vector<WordPair> out;
    std::map<std::pair<Rational, Rational>, std::size_t> seen;

    std::vector<std::string> level{""};
    for (int len = 0; len <= max_len; ++len) {
        for (const auto& w : level) {
            ExponentPair p = apply_word(Word(w), trivial_pair());
            auto k = std::make_pair(p.kappa, p.lambda);
            if (!seen.count(k)) {
                seen.emplace(k, out.size());
                out.push_back({Word(w), p});
            }
        }
        if (len == max_len) break;
        std::vector<std::string> next;
        next.reserve(level.size() * 2);
        for (const auto& w : level) {
            next.push_back(w + 'A');
            if (w.empty() || w.back() != 'B') next.push_back(w + 'B');
        }
        level = std::move(next);
    }
    return out;
}

// Lemma bound lambda1^kappa * a^lambda + 1/lambda1, evaluated in floating point.
inline double vdc_bound(const ExponentPair& p, double lambda1, double a) {
    require_valid(p);
    if (!(lambda1 > 0)) throw std::invalid_argument("vdc_bound: lambda1 must be positive");
    if (!(a >= 1)) throw std::invalid_argument("vdc_bound: a must be >= 1");
    return std::pow(lambda1, rat_double(p.kappa)) * std::pow(a, rat_double(p.lambda)) +
           1.0 / lambda1;
}

}  // namespace psap::pairs
