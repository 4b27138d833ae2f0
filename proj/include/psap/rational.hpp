#pragma once

// Exact rational arithmetic used everywhere a constant must be reproduced
// bit-for-bit (exponent pairs, constraint systems, sieve levels). Backed by
// GMP through boost::multiprecision: canonical form (lowest terms, positive
// denominator) is maintained by the backend.

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace psap {

using BigInt = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

inline BigInt rat_num(const Rational& r) { return boost::multiprecision::numerator(r); }
inline BigInt rat_den(const Rational& r) { return boost::multiprecision::denominator(r); }

// Floor of an exact rational.
inline BigInt rat_floor(const Rational& r) {
    BigInt n = rat_num(r), d = rat_den(r);
    BigInt q = n / d;
    if (n < 0 && q * d != n) --q;
    return q;
}

inline double rat_double(const Rational& r) { return r.convert_to<double>(); }

// GMP keeps mpq values canonical under arithmetic but does not fix the sign
// of a negative denominator passed at construction; this does.
inline Rational make_rational(BigInt n, BigInt d) {
    if (d == 0) throw std::invalid_argument("zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    return Rational(n, d);
}

// Accepts "p/q", integer, or decimal literals ("1.02" -> 51/50).
inline Rational parse_rational(std::string_view s) {
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    std::string str(s);
    auto slash = str.find('/');
    if (slash != std::string::npos) {
        BigInt n(str.substr(0, slash));
        BigInt d(str.substr(slash + 1));
        if (d == 0) throw std::invalid_argument("zero denominator: " + str);
        return make_rational(n, d);
    }
    auto dot = str.find('.');
    if (dot == std::string::npos) return Rational(BigInt(str));
    std::string digits = str.substr(0, dot) + str.substr(dot + 1);
    if (digits.empty() || digits == "-" || digits == "+")
        throw std::invalid_argument("malformed rational literal: " + str);
    BigInt n(digits);
    BigInt d = 1;
    for (size_t i = dot + 1; i < str.size(); ++i) d *= 10;
    return Rational(n, d);
}

inline std::string rat_string(const Rational& r) {
    BigInt n = rat_num(r), d = rat_den(r);
    if (d == 1) return n.str();
    return n.str() + "/" + d.str();
}

}  // namespace psap
