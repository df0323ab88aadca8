#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace coprime {

/// Arbitrary-precision integer. Everything in this library that counts objects
/// counts them exactly; doubles appear only at the presentation layer.
///
/// GMP-backed on purpose: the truncated infinite products grow numerators and
/// denominators into the millions of bits, where GMP's subquadratic gcd and
/// multiplication are the difference between milliseconds and hours.
using BigInt = boost::multiprecision::mpz_int;

/// Exact rational number, always kept in lowest terms by the backend.
using Rat = boost::multiprecision::mpq_rational;

/// base^exp for non-negative integer exponents.
BigInt ipow(const BigInt& base, std::uint64_t exp);

/// base^exp for a rational base; exp may be negative (base must be nonzero then).
Rat rpow(const Rat& base, std::int64_t exp);

/// q^{-exp} as an exact rational: the "t^exp" that shows up in every formula
/// here once t is specialised to 1/q.
Rat t_pow(std::uint64_t q, std::uint64_t exp);

/// Nearest-double rendering of an exact rational (presentation only).
double to_double(const Rat& r);

/// "num/den" in lowest terms, e.g. "21/32"; integers render as "n/1".
std::string rat_string(const Rat& r);

/// Fixed-format decimal rendering with `digits` significant digits.
std::string decimal_string(const Rat& r, int digits = 12);

BigInt factorial(unsigned n);
BigInt binomial(unsigned n, unsigned k);

}  // namespace coprime
