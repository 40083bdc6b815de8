#pragma once

#include <string>
#include <string_view>

#include <gmpxx.h>

namespace legn {

// Exact rationals. mpq_class keeps the canonical form (den > 0, gcd = 1)
// after every arithmetic operation.
using Rat = mpq_class;
using Int = mpz_class;

/// Parses "num/den" or "num". Throws Error(ParseError) on bad input or a zero denominator.
Rat parse_rat(std::string_view text);

/// Serializes as "num/den"; integers are written "num/1".
std::string format_rat(const Rat& q);

std::string format_decimal(const Rat& q, int digits = 12);

Rat pow(const Rat& base, int exponent);

/// num/den in canonical form (the two-argument mpq_class constructor does not reduce).
inline Rat frac(long num, long den)
{
    Rat q(num, den);
    q.canonicalize();
    return q;
}

/// Rational k-th root when one exists (sign handled for odd k).
bool rational_root(const Rat& q, int k, Rat& out);

} // namespace legn
