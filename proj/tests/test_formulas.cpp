// Closed-form side. Frozen values and their one-line derivations:
//
//   rank-1 2x2 over GF(2):      (2^2-1)^2 / (2-1) = 9
//   |GL_2(F_2)| = 6, |GL_2(F_3)| = 48, |GL_3(F_2)| = 168
//   full-rank 2x4 over GF(2):   (1 - 2^-3)(1 - 2^-4) = 105/128
//   full-rank 2x4 over GF(3):   (26/27)(80/81)        = 2080/2187
//   three coprime monic linear polynomials over F_q: (1-t)(1-2t), so the
//   t^2 coefficient at N=3 drops from 5 to 2 when all degrees equal one.
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "coprime/formulas.hpp"
#include "coprime/poly.hpp"

using namespace coprime;

namespace {
Rat frac(long long n, long long d) { return Rat(BigInt(n), BigInt(d)); }
}  // namespace

TEST_SUITE("formulas") {

TEST_CASE("rank census closed form") {
  CHECK(rank_census(2, 2, 1, 2) == Rat(9));
  CHECK(rank_census(2, 2, 2, 2) == Rat(6));
  CHECK(rank_census(2, 4, 2, 2) == Rat(210));  // 105/128 of 256
  CHECK(rank_census(3, 3, 3, 2) == Rat(168));
  CHECK(rank_census(1, 1, 1, 5) == Rat(4));

  // ranks partition the nonzero matrices: sum + 1 = q^(k*n)
  for (std::uint64_t q : {2, 3, 4})
    for (int k = 1; k <= 3; ++k)
      for (int n = 1; n <= 3; ++n) {
        Rat total(1);
        for (int r = 1; r <= std::min(k, n); ++r) total += rank_census(k, n, r, q);
        CHECK(total == Rat(ipow(BigInt(q), static_cast<unsigned>(k * n))));
      }

  CHECK_THROWS_AS(rank_census(2, 2, 3, 2), std::domain_error);
  CHECK_THROWS_AS(rank_census(2, 2, 0, 2), std::domain_error);
  CHECK_THROWS_AS(rank_census(0, 2, 1, 2), std::domain_error);
  CHECK_THROWS_AS(rank_census(2, 2, 1, 1), std::domain_error);
}

TEST_CASE("general linear group orders") {
  CHECK(gl_count(2, 2) == BigInt(6));
  CHECK(gl_count(2, 3) == BigInt(48));
  CHECK(gl_count(3, 2) == BigInt(168));
  CHECK(gl_count(1, 7) == BigInt(6));
  // consistency with the top rank of the census
  for (std::uint64_t q : {2, 3})
    for (int n = 1; n <= 3; ++n) CHECK(Rat(gl_count(n, q)) == rank_census(n, n, n, q));
  CHECK_THROWS_AS(gl_count(0, 2), std::domain_error);
}

TEST_CASE("setwise coprimality probability") {
  CHECK(setwise_coprime_prob(2, 2) == frac(1, 2));
  CHECK(setwise_coprime_prob(3, 2) == frac(3, 4));
  CHECK(setwise_coprime_prob(2, 9) == frac(8, 9));
  CHECK(setwise_coprime_prob(4, 3) == frac(26, 27));
  CHECK_THROWS_AS(setwise_coprime_prob(1, 2), std::domain_error);
}

TEST_CASE("pairwise expansion coefficients") {
  AsymptoticCoeffs a = pairwise_uniform_asymptotic(3, 0, 2);
  CHECK(a.c0() == Rat(1));
  CHECK(a.c1() == Rat(-3));  // -C(3,2)
  CHECK(a.c2() == Rat(5));
  CHECK(a.order == 3);
  CHECK(a.variable_power == 1);

  CHECK(pairwise_uniform_asymptotic(3, 3, 2).c2() == Rat(2));
  CHECK(pairwise_uniform_asymptotic(2, 0, 2).c2() == Rat(0));
  CHECK(pairwise_uniform_asymptotic(4, 0, 2).c2() == Rat(23));
  // coefficients are q-independent
  CHECK(pairwise_uniform_asymptotic(5, 2, 2).c2() == pairwise_uniform_asymptotic(5, 2, 9).c2());
  // evaluation drops the error term: 1 - 3/10 + 5/100
  CHECK(pairwise_uniform_asymptotic(3, 0, 2).eval(10) == frac(3, 4));
  // a skipped exponent reads as zero
  CHECK(pairwise_uniform_asymptotic(3, 0, 2).coeff_at(7) == Rat(0));

  CHECK_THROWS_AS(pairwise_uniform_asymptotic(1, 0, 2), std::domain_error);
  CHECK_THROWS_AS(pairwise_uniform_asymptotic(3, 4, 2), std::domain_error);
  CHECK_THROWS_AS(pairwise_uniform_asymptotic(3, -1, 2), std::domain_error);
}

TEST_CASE("pairwise density truncation: explicit small depths") {
  // q=2, N=2: factor at j is (1-t^j)(1+t^j) = 1-t^(2j), with 2 linear and 1
  // quadratic irreducible: J=1 gives (3/4)^2, J=2 adds a single 15/16.
  TruncatedProduct p1 = pairwise_density_truncated(2, 2, 1);
  CHECK(p1.value == frac(9, 16));
  CHECK(p1.depth == 1);
  CHECK(p1.exact);
  TruncatedProduct p2 = pairwise_density_truncated(2, 2, 2);
  CHECK(p2.value == frac(135, 256));
  // deeper truncations tighten the certificate
  CHECK(p2.tail_bound < p1.tail_bound);
  CHECK(p2.tail_bound > Rat(0));
  CHECK_THROWS_AS(pairwise_density_truncated(2, 2, 0), std::domain_error);
  CHECK_THROWS_AS(pairwise_density_truncated(1, 2, 3), std::domain_error);
}

TEST_CASE("pairwise density truncation brackets the two-polynomial limit") {
  // at N=2 the full product telescopes to 1 - 1/q
  for (std::uint64_t q : {2, 3}) {
    TruncatedProduct p = pairwise_density_truncated(2, q, 14);
    double val = to_double(p.value);
    double tail = to_double(p.tail_bound);
    double limit = 1.0 - 1.0 / static_cast<double>(q);
    CHECK(val * std::exp(-tail) <= limit);
    CHECK(limit <= val * std::exp(tail));
    CHECK(std::abs(val - limit) < 1e-4);
  }
}

TEST_CASE("pairwise density expansion coincides with the uniform one at N1 = 0") {
  for (int N = 2; N <= 10; ++N) {
    AsymptoticCoeffs dens = pairwise_density_asymptotic(N);
    AsymptoticCoeffs unif = pairwise_uniform_asymptotic(N, 0, 2);
    for (int e = 0; e <= 2; ++e) CHECK(dens.coeff_at(e) == unif.coeff_at(e));
  }
}

TEST_CASE("mutual expansion leading deficit") {
  // 1 - sum_{y=2}^{min(m+1,N)} C(N,y) t^m
  AsymptoticCoeffs a23 = mutual_uniform_asymptotic(2, 3);
  CHECK(a23.c0() == Rat(1));
  CHECK(a23.coeff_at(2) == Rat(-4));  // C(3,2)+C(3,3)
  AsymptoticCoeffs a22 = mutual_uniform_asymptotic(2, 2);
  CHECK(a22.coeff_at(2) == Rat(-1));
  AsymptoticCoeffs a34 = mutual_uniform_asymptotic(3, 4);
  CHECK(a34.coeff_at(3) == Rat(-(6 + 4 + 1)));  // y = 2,3,4
  CHECK_THROWS_AS(mutual_uniform_asymptotic(1, 3), std::domain_error);
}

TEST_CASE("exact pair probability") {
  CHECK(wj_exact_pair(1, 2, 1) == frac(3, 4));
  CHECK(wj_exact_pair(1, 2, 2) == frac(15, 16));
  CHECK(wj_exact_pair(2, 2, 1) == frac(105, 128));
  CHECK(wj_exact_pair(2, 3, 1) == frac(2080, 2187));
  CHECK_THROWS_AS(wj_exact_pair(0, 2, 1), std::domain_error);
  CHECK_THROWS_AS(wj_exact_pair(1, 2, 0), std::domain_error);
}

TEST_CASE("chain probability recursion") {
  // N=2, m=1, q=2, j=1: a = |GL_1|/q = 1/2, so W(2) = 2a - a^2 = 3/4
  std::vector<Rat> w01 = {Rat(1), Rat(1)};
  CHECK(wj_recursion(1, 2, 2, 1, w01, Rat(0)) == frac(3, 4));
  // m=2 exceeds N-1, so the correction term is free; the pair closed form
  // pins it: 105/128 = 2a - a^2 + What with a = 6/16
  Rat a = frac(6, 16);
  Rat what = frac(105, 128) - (Rat(2) * a - a * a);
  CHECK(wj_recursion(2, 2, 2, 1, w01, what) == frac(105, 128));
  CHECK(what == frac(27, 128));
  // N=3, m=1, q=2: W(3) = 3a W(2) - 3a^2 W(1) + a^3 W(0) = 1/2
  std::vector<Rat> w012 = {Rat(1), Rat(1), frac(3, 4)};
  CHECK(wj_recursion(1, 3, 2, 1, w012, Rat(0)) == frac(1, 2));

  // guard: the correction must vanish when m <= N-1
  CHECK_THROWS_AS(wj_recursion(1, 2, 2, 1, w01, frac(1, 100)), std::domain_error);
  // prior values must anchor at 1
  std::vector<Rat> bad = {Rat(1), frac(1, 2)};
  CHECK_THROWS_AS(wj_recursion(1, 2, 2, 1, bad, Rat(0)), std::invalid_argument);
  std::vector<Rat> short_list = {Rat(1)};
  CHECK_THROWS_AS(wj_recursion(1, 2, 2, 1, short_list, Rat(0)), std::invalid_argument);
}

TEST_CASE("chain probability expansion") {
  AsymptoticCoeffs a = wj_asymptotic(2, 3, 4);
  CHECK(a.c0() == Rat(1));
  CHECK(a.coeff_at(3) == Rat(-4));  // u^(m+1) deficit, u = t^j
  CHECK(a.variable_power == 4);
  CHECK(wj_asymptotic(1, 2, 1).coeff_at(2) == Rat(-1));
}

TEST_CASE("mutual density truncation through a provider") {
  auto exact_pair = [](int j) { return WjValue{wj_exact_pair(2, 2, j), true}; };
  TruncatedProduct p = mutual_density_truncated(2, 2, 2, 12, exact_pair);
  CHECK(p.exact);
  CHECK(p.depth == 12);
  // limit is (1-2^-2)(1-2^-3) = 21/32
  double val = to_double(p.value);
  double tail = to_double(p.tail_bound);
  CHECK(std::abs(val - 21.0 / 32.0) < 1e-3);
  CHECK(val * std::exp(-tail) <= 21.0 / 32.0);
  CHECK(21.0 / 32.0 <= val * std::exp(tail));

  // m=1, N=2: the product collapses to 1 - 1/q
  auto scalar_pair = [](int j) { return WjValue{wj_exact_pair(1, 2, j), true}; };
  TruncatedProduct s = mutual_density_truncated(1, 2, 2, 10, scalar_pair);
  CHECK(std::abs(to_double(s.value) - 0.5) < 1e-3);

  // a sampled factor clears the exact flag without changing the value
  auto tainted = [](int j) { return WjValue{wj_exact_pair(2, 2, j), j != 3}; };
  TruncatedProduct t = mutual_density_truncated(2, 2, 2, 12, tainted);
  CHECK_FALSE(t.exact);
  CHECK(t.value == p.value);

  // depth zero: empty product, certified only by the coarse envelope
  TruncatedProduct z = mutual_density_truncated(2, 2, 2, 0, exact_pair);
  CHECK(z.value == Rat(1));
  CHECK(z.tail_bound > Rat(0));

  // a provider whose values violate the deficit envelope is rejected
  auto liar = [](int) { return WjValue{frac(1, 2), true}; };
  CHECK_THROWS_AS(mutual_density_truncated(2, 2, 2, 12, liar), std::domain_error);
}

TEST_CASE("alternating binomial identity") {
  for (int M = 1; M <= 30; ++M) {
    auto [lhs, rhs] = binom_identity(M);
    CHECK(lhs == rhs);
    CHECK(rhs == Rat(BigInt(-1), factorial(static_cast<unsigned>(M))));
  }
  CHECK_THROWS_AS(binom_identity(0), std::domain_error);
}

TEST_CASE("square pair reference values") {
  auto [uniform2, density2] = conclusion_reference(2);
  CHECK(uniform2 == frac(5, 6));
  CHECK(density2 == frac(21, 32));
  auto [uniform3, density3] = conclusion_reference(3);
  CHECK(uniform3 == frac(11, 12));
  CHECK(density3 == frac(208, 243));
  CHECK(uniform2 > density2);
  CHECK(uniform3 > density3);
}

}  // TEST_SUITE
