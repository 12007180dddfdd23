#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace vdf {

using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "p", "-p" or "p/q"; throws vdf::Error on malformed input.
Rational parse_rational(std::string_view text);

/// Canonical "p" or "p/q" form.
std::string to_string(const Rational& q);

bool is_integer(const Rational& q);

/// Binomial coefficient C(a, k) for rational a and natural k.
Rational binomial(const Rational& a, unsigned long k);

Rational factorial(unsigned long n);

/// a^n for integer n (n < 0 requires a != 0).
Rational pow(const Rational& a, long n);

/// Smallest integer >= q.
Integer ceil(const Rational& q);

}  // namespace vdf
