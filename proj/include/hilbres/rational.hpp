/**
 * @file rational.hpp
 * @brief Arbitrary precision rationals (GMP) and their text form "p/q".
 */
#pragma once

#include "error.hpp"

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace hilbres {

using Integer = mpz_class;
using Rational = mpq_class;

/// Parses "p", "p/q", "-p/q" (surrounding blanks allowed). Result is canonical.
inline Rational parse_rational(std::string_view text) {
    auto first = text.find_first_not_of(" \t\n");
    auto last = text.find_last_not_of(" \t\n");
    if (first == std::string_view::npos) throw Error("empty rational");
    std::string s(text.substr(first, last - first + 1));
    if (!s.empty() && s.front() == '+') s.erase(0, 1);
    auto slash = s.find('/');
    auto digits_ok = [](const std::string& part, bool allow_sign) {
        std::size_t i = 0;
        if (allow_sign && i < part.size() && part[i] == '-') ++i;
        if (i == part.size()) return false;
        for (; i < part.size(); ++i)
            if (part[i] < '0' || part[i] > '9') return false;
        return true;
    };
    std::string num = slash == std::string::npos ? s : s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!digits_ok(num, true) || !digits_ok(den, false))
        throw Error("malformed rational '" + std::string(text) + "'");
    Integer d(den);
    if (d == 0) throw Error("zero denominator in '" + std::string(text) + "'");
    Rational r(Integer(num), d);
    r.canonicalize();
    return r;
}

inline std::string to_string(const Rational& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

/// Largest integer not above r.
inline Integer floor(const Rational& r) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
    return q;
}

/// r - floor(r), in [0, 1).
inline Rational frac(const Rational& r) { return r - Rational(floor(r)); }

inline Integer lcm_of_denominators(const std::vector<Rational>& v) {
    Integer l = 1;
    for (const auto& x : v) {
        Integer den = x.get_den();
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), den.get_mpz_t());
    }
    return l;
}

/// Scales v to a primitive integer vector (gcd 1); the zero vector stays zero.
/// The sign of v is kept.
inline std::vector<Integer> primitive_integer(const std::vector<Rational>& v) {
    Integer l = lcm_of_denominators(v);
    std::vector<Integer> out;
    out.reserve(v.size());
    Integer g = 0;
    for (const auto& x : v) {
        Rational scaled = x * Rational(l);
        out.push_back(scaled.get_num());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), out.back().get_mpz_t());
    }
    if (g > 1)
        for (auto& x : out) x /= g;
    return out;
}

} // namespace hilbres
