#pragma once

#include <gmpxx.h>

#include <string>

namespace lgcy {

// Arbitrary-precision rational, always kept in lowest terms with positive denominator.
using Rational = mpq_class;
using Integer = mpz_class;

Rational makeRational(long num, long den = 1);

// Largest integer <= q.
Integer floorOf(const Rational& q);
// q - floor(q), in [0, 1).
Rational fracOf(const Rational& q);
bool isIntegral(const Rational& q);

Rational factorial(unsigned n);
Integer binomial(unsigned n, unsigned k);

std::string toString(const Rational& q);
// Accepts "a" or "a/b" with optional sign.
Rational parseRational(const std::string& s);

}  // namespace lgcy
