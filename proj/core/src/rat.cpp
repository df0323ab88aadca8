#include "coprime/rat.hpp"

#include <cmath>
#include <cstdio>

namespace coprime {

BigInt ipow(const BigInt& base, std::uint64_t exp) {
  BigInt acc = 1;
  BigInt b = base;
  while (exp != 0) {
    if (exp & 1) acc *= b;
    exp >>= 1;
    if (exp != 0) b *= b;
  }
  return acc;
}

Rat rpow(const Rat& base, std::int64_t exp) {
  if (exp == 0) return Rat(1);
  if (base == 0) {
    if (exp < 0) throw std::domain_error("rpow: zero base with negative exponent");
    return Rat(0);
  }
  const bool invert = exp < 0;
  std::uint64_t e = invert ? static_cast<std::uint64_t>(-(exp + 1)) + 1
                           : static_cast<std::uint64_t>(exp);
  Rat acc = 1;
  Rat b = base;
  while (e != 0) {
    if (e & 1) acc *= b;
    e >>= 1;
    if (e != 0) b *= b;
  }
  if (invert) acc = Rat(1) / acc;
  return acc;
}

Rat t_pow(std::uint64_t q, std::uint64_t exp) {
  if (q < 2) throw std::domain_error("t_pow: q must be at least 2");
  return Rat(BigInt(1), ipow(BigInt(q), exp));
}

double to_double(const Rat& r) { return r.convert_to<double>(); }

std::string rat_string(const Rat& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

std::string decimal_string(const Rat& r, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, to_double(r));
  return buf;
}

BigInt factorial(unsigned n) {
  BigInt acc = 1;
  for (unsigned i = 2; i <= n; ++i) acc *= i;
  return acc;
}

BigInt binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt acc = 1;
  for (unsigned i = 1; i <= k; ++i) {
    acc *= (n - k + i);
    acc /= i;  // exact at every step: acc is C(n-k+i, i)
  }
  return acc;
}

}  // namespace coprime
