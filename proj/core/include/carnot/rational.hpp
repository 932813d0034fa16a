#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace carnot {

// mpq_class values built through these helpers are always canonical
// (lowest terms, positive denominator).
using Rational = mpq_class;
using BigInt = mpz_class;

Rational make_rational(long num, long den = 1);
Rational make_rational(const BigInt& num, const BigInt& den);

// Accepts "7", "-7/2", "0.125", "-1.5e-3". Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

// "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& q);
// Always "p/q" (integers as "p/1").
std::string to_fraction_string(const Rational& q);

double to_double(const Rational& q);
// Exact binary value of a finite double.
Rational from_double(double d);

Rational rational_pow(const Rational& q, unsigned k);
int sign(const Rational& q);
Rational abs(const Rational& q);

}  // namespace carnot
