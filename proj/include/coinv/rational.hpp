#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace coinv {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Canonicalized p/q. Throws std::invalid_argument when q == 0.
Rational make_rational(long p, long q = 1);

/// Parses "p/q" or "p" (optional leading sign, no whitespace).
Rational parse_rational(std::string_view text);

/// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& r);
std::string to_string(const BigInt& z);

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

BigInt floor(const Rational& r);
BigInt ceil(const Rational& r);

}  // namespace coinv
