#pragma once

#include <gmpxx.h>

#include <string>

namespace tautrel {

// Exact scalars. GMP keeps mpq values normalized (gcd 1, positive denominator, 0 == 0/1).
using Integer = mpz_class;
using Rational = mpq_class;

Rational make_rational(long num, long den = 1);

// "p/q", or "p" when q == 1.
std::string to_string(const Rational& q);
Rational parse_rational(const std::string& text);

Integer factorial(unsigned n);
Integer binomial(unsigned n, unsigned k);
Rational power(const Rational& base, unsigned exponent);
// r^e for a possibly negative exponent e.
Rational int_power(long base, int exponent);

} // namespace tautrel
