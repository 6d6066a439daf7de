#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

#include "growthforge/errors.hpp"

namespace growthforge {

// Exact scalars. All arithmetic in the library is over these; no floating
// point is used anywhere a decision depends on it.
using Int = mpz_class;
using Rat = mpq_class;

inline Int int_pow(const Int& base, unsigned long exponent) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exponent);
    return r;
}

/// Quotient a/b when b exactly divides a; logic_error otherwise (callers use
/// this only where divisibility is a proven invariant).
inline Int exact_div(const Int& a, const Int& b) {
    if (b == 0) throw std::logic_error("exact_div: division by zero");
    if (!mpz_divisible_p(a.get_mpz_t(), b.get_mpz_t()))
        throw std::logic_error("exact_div: " + a.get_str() + " not divisible by " +
                               b.get_str());
    Int q;
    mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline std::string to_decimal(const Int& v) { return v.get_str(); }

/// Parse a decimal integer with optional leading '-'. ParseError on anything
/// else (no whitespace, no '+', no empty string).
inline Int parse_decimal(const std::string& text) {
    if (text.empty()) throw ParseError("empty integer literal");
    std::size_t start = text[0] == '-' ? 1 : 0;
    if (start == text.size()) throw ParseError("bare sign is not an integer");
    for (std::size_t i = start; i < text.size(); ++i)
        if (text[i] < '0' || text[i] > '9')
            throw ParseError("invalid integer literal '" + text + "'");
    return Int(text);
}

inline Rat make_rat(const Int& num, const Int& den) {
    if (den == 0) throw std::logic_error("make_rat: zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

/// Parse "p" or "p/q" as an exact rational.
inline Rat parse_rational(const std::string& text) {
    auto slash = text.find('/');
    if (slash == std::string::npos) return Rat(parse_decimal(text));
    Int num = parse_decimal(text.substr(0, slash));
    Int den = parse_decimal(text.substr(slash + 1));
    if (den == 0) throw ParseError("zero denominator in '" + text + "'");
    return make_rat(num, den);
}

inline std::string to_string(const Rat& q) { return q.get_str(); }

} // namespace growthforge
