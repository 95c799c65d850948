#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

#include "acirc/errors.hpp"

namespace acirc {

// Exact rational scalar. mpq_class keeps the canonical form we rely on:
// gcd(|num|, den) = 1, den >= 1, zero is 0/1.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational rat(long num, long den = 1) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

// Accepts "p" or "p/q" with optional leading sign.
inline Rational parse_rational(const std::string& text) {
    auto bad = [&] { throw ValidationError("bad rational literal '" + text + "'"); };
    if (text.empty()) bad();
    std::string num = text, den = "1";
    if (auto slash = text.find('/'); slash != std::string::npos) {
        num = text.substr(0, slash);
        den = text.substr(slash + 1);
        if (den.empty() || den == "0") bad();
    }
    auto digits_ok = [](const std::string& s, bool sign) {
        if (s.empty()) return false;
        std::size_t i = (sign && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
        if (i >= s.size()) return false;
        for (; i < s.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
        return true;
    };
    if (!digits_ok(num, true) || !digits_ok(den, false)) bad();
    Integer zn(num), zd(den);
    Rational q(zn, zd);
    q.canonicalize();
    return q;
}

// Rendered as "p" or "p/q" (q omitted when 1).
inline std::string to_string(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline Rational rat_pow(const Rational& base, unsigned exp) {
    Rational acc = 1, b = base;
    while (exp) {
        if (exp & 1u) acc *= b;
        b *= b;
        exp >>= 1u;
    }
    return acc;
}

// Cheap structural hash for grouping; exact comparison always follows.
inline std::size_t rat_hash(const Rational& q) {
    constexpr unsigned long m = 0x7fffffffffffffe7UL; // prime below 2^63
    unsigned long hn = mpz_fdiv_ui(q.get_num().get_mpz_t(), m);
    unsigned long hd = mpz_fdiv_ui(q.get_den().get_mpz_t(), m);
    return static_cast<std::size_t>(hn * 1000003UL + hd);
}

} // namespace acirc
