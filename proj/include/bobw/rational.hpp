#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace bobw {

// GMP keeps mpq_class canonical after every arithmetic operation.
using Rational = mpq_class;
using BigInt = mpz_class;

// Accepts "p/q", "p" and an optional leading '-'. Throws PreconditionError.
Rational parse_rational(std::string_view text);

// Always "p/q", including integers ("3/1"), so output is byte-stable.
std::string to_string(const Rational& r);

Rational make_rational(long num, long den = 1);

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

}  // namespace bobw
