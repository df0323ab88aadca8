#include "coprime/formulas.hpp"

#include <algorithm>
#include <stdexcept>

#include "coprime/poly.hpp"

namespace coprime {

Rat AsymptoticCoeffs::coeff_at(int exponent) const {
  for (const Term& t : terms)
    if (t.exponent == exponent) return t.coeff;
  return Rat(0);
}

Rat AsymptoticCoeffs::eval(std::uint64_t q) const {
  Rat sum(0);
  for (const Term& t : terms) {
    if (t.exponent < 0) throw std::logic_error("negative exponent in expansion");
    sum += t.coeff * t_pow(q, static_cast<std::uint64_t>(t.exponent) *
                                  static_cast<std::uint64_t>(variable_power));
  }
  return sum;
}

Rat rank_census(int k, int n, int r, std::uint64_t q) {
  if (k < 1 || n < 1) throw std::domain_error("matrix dimensions must be positive");
  if (q < 2) throw std::domain_error("field order must be at least 2");
  if (r < 1 || r > std::min(k, n)) throw std::domain_error("rank out of range");
  const Rat t(1, BigInt(q));
  Rat count = rpow(t, -static_cast<std::int64_t>(n) * r);
  for (int i = n - r + 1; i <= n; ++i) count *= Rat(1) - rpow(t, i);
  for (int i = 0; i < r; ++i)
    count *= (rpow(t, i - k) - 1) / (rpow(t, -(i + 1)) - 1);
  if (denominator(count) != 1) throw std::logic_error("rank count is not an integer");
  return count;
}

BigInt gl_count(int n, std::uint64_t q) {
  if (n < 1) throw std::domain_error("group dimension must be positive");
  if (q < 2) throw std::domain_error("field order must be at least 2");
  // t^{-n^2} prod (1 - t^j) collapses to prod_j (q^n - q^{n-j}).
  const BigInt qn = ipow(BigInt(q), static_cast<std::uint64_t>(n));
  BigInt count(1), power(1);
  for (int j = n - 1; j >= 0; --j, power *= q) count *= qn - power;
  return count;
}

Rat setwise_coprime_prob(int N, std::uint64_t q) {
  if (N < 2) throw std::domain_error("need at least two polynomials");
  if (q < 2) throw std::domain_error("field order must be at least 2");
  return Rat(1) - t_pow(q, static_cast<std::uint64_t>(N) - 1);
}

AsymptoticCoeffs pairwise_uniform_asymptotic(int N, int N1, std::uint64_t q) {
  if (N < 2) throw std::domain_error("need at least two polynomials");
  if (N1 < 0 || N1 > N) throw std::domain_error("degree-one count out of range");
  if (q < 2) throw std::domain_error("field order must be at least 2");
  const BigInt n(N);
  AsymptoticCoeffs out;
  out.terms.push_back({0, Rat(1)});
  out.terms.push_back({1, Rat(-(n * (n - 1)) / 2)});
  out.terms.push_back(
      {2, Rat((n - 1) * (n - 2) * (3 * n * n + 11 * n - 12 * N1), 24)});
  out.order = 3;
  return out;
}

TruncatedProduct pairwise_density_truncated(int N, std::uint64_t q, int J) {
  if (N < 2) throw std::domain_error("need at least two polynomials");
  if (q < 2) throw std::domain_error("field order must be at least 2");
  if (J < 1) throw std::domain_error("truncation depth must be at least 1");
  // Factor at degree j: ((q^j-1)^{N-1} (q^j + N-1)) / q^{jN}, raised to the
  // number of monic irreducibles of degree j. Numerator and denominator are
  // accumulated separately so the big rational is normalized only once.
  BigInt num(1);
  std::uint64_t den_exp = 0;
  for (int j = 1; j <= J; ++j) {
    const BigInt phi_big = irreducible_count(static_cast<unsigned>(j), BigInt(q));
    if (phi_big > BigInt(UINT64_MAX))
      throw std::overflow_error("irreducible count exceeds exponent range");
    const auto phi = static_cast<std::uint64_t>(phi_big);
    const BigInt qj = ipow(BigInt(q), static_cast<std::uint64_t>(j));
    const BigInt factor = ipow(qj - 1, static_cast<std::uint64_t>(N) - 1) * (qj + N - 1);
    num *= ipow(factor, phi);
    den_exp += static_cast<std::uint64_t>(j) * N * phi;
  }
  TruncatedProduct out;
  out.value = Rat(num, ipow(BigInt(q), den_exp));
  out.depth = J;
  out.tail_bound = Rat(BigInt(N) * N) * t_pow(q, J) / (Rat(J) * (Rat(1) - Rat(1, BigInt(q))));
  return out;
}

AsymptoticCoeffs pairwise_density_asymptotic(int N) {
  if (N < 2) throw std::domain_error("need at least two polynomials");
  return pairwise_uniform_asymptotic(N, 0, 2);
}

namespace {

// Deficit sum: number of ways a common left divisor can arise at the lowest
// order, sum_{y=2}^{min(m+1,N)} C(N,y).
BigInt deficit_sum(int m, int N) {
  BigInt s(0);
  for (int y = 2; y <= std::min(m + 1, N); ++y)
    s += binomial(static_cast<unsigned>(N), static_cast<unsigned>(y));
  return s;
}

}  // namespace

AsymptoticCoeffs mutual_uniform_asymptotic(int m, int N) {
  if (m < 2 || N < 2) throw std::domain_error("need m >= 2 and N >= 2");
  AsymptoticCoeffs out;
  out.terms.push_back({0, Rat(1)});
  out.terms.push_back({m, Rat(-deficit_sum(m, N))});
  out.order = m + 1;
  return out;
}

Rat wj_exact_pair(int m, std::uint64_t q, int j) {
  if (m < 1 || j < 1) throw std::domain_error("need m >= 1 and j >= 1");
  if (q < 2) throw std::domain_error("field order must be at least 2");
  Rat value(1);
  for (int l = m + 1; l <= 2 * m; ++l)
    value *= Rat(1) - t_pow(q, static_cast<std::uint64_t>(j) * l);
  return value;
}

Rat wj_recursion(int m, int N, std::uint64_t q, int j, const std::vector<Rat>& W,
                 const Rat& What) {
  if (m < 1 || j < 1) throw std::domain_error("need m >= 1 and j >= 1");
  if (N < 2) throw std::domain_error("need at least two blocks");
  if (q < 2) throw std::domain_error("field order must be at least 2");
  if (W.size() != static_cast<std::size_t>(N))
    throw std::invalid_argument("need prior values W(0..N-1)");
  if (W[0] != 1 || W[1] != 1)
    throw std::invalid_argument("recursion anchors W(0) = W(1) = 1");
  if (m <= N - 1 && What != 0)
    throw std::domain_error("correction term must vanish for m <= N-1");
  // a = fraction of invertible m x m matrices over the q^j-element field.
  const std::uint64_t mm = static_cast<std::uint64_t>(m) * m;
  const BigInt qj = ipow(BigInt(q), static_cast<std::uint64_t>(j));
  BigInt invertible(1), power(1);
  const BigInt qjm = ipow(qj, static_cast<std::uint64_t>(m));
  for (int i = 0; i < m; ++i, power *= qj) invertible *= qjm - power;
  const Rat a(invertible, ipow(qj, mm));
  Rat value = What;
  Rat apow(1);
  for (int i = 1; i <= N; ++i) {
    apow *= a;
    const Rat term = Rat(binomial(static_cast<unsigned>(N), static_cast<unsigned>(i))) *
                     apow * W[static_cast<std::size_t>(N - i)];
    value += (i % 2 == 1) ? term : -term;
  }
  return value;
}

AsymptoticCoeffs wj_asymptotic(int m, int N, int j) {
  if (m < 1 || j < 1) throw std::domain_error("need m >= 1 and j >= 1");
  if (N < 2) throw std::domain_error("need at least two blocks");
  AsymptoticCoeffs out;
  out.terms.push_back({0, Rat(1)});
  out.terms.push_back({m + 1, Rat(-deficit_sum(m, N))});
  out.order = m + 2;
  out.variable_power = j;
  return out;
}

TruncatedProduct mutual_density_truncated(int m, int N, std::uint64_t q, int J,
                                          const WjProvider& provider) {
  if (m < 1) throw std::domain_error("need m >= 1");
  if (N < 2) throw std::domain_error("need at least two blocks");
  if (q < 2) throw std::domain_error("field order must be at least 2");
  if (J < 0) throw std::domain_error("truncation depth must be nonnegative");
  if (J > 0 && !provider) throw std::invalid_argument("factor provider required");

  const Rat slack = Rat(deficit_sum(m, N) + 1);
  TruncatedProduct out;
  out.value = Rat(1);
  out.depth = J;

  // The tail formula rests on 1 - W_j <= (S+1) t^{j(m+1)}; it is adopted
  // only after holding for every provided factor from some j0 onward
  // through J, so extrapolating past J is an observed trend, not faith.
  int j0 = J + 1;
  BigInt num(1), den(1);
  for (int j = 1; j <= J; ++j) {
    const WjValue wj = provider(j);
    if (wj.value <= 0 || wj.value > 1)
      throw std::domain_error("factor outside (0, 1]");
    out.exact = out.exact && wj.exact;
    const BigInt phi_big = irreducible_count(static_cast<unsigned>(j), BigInt(q));
    if (phi_big > BigInt(UINT64_MAX))
      throw std::overflow_error("irreducible count exceeds exponent range");
    const auto phi = static_cast<std::uint64_t>(phi_big);
    num *= ipow(numerator(wj.value), phi);
    den *= ipow(denominator(wj.value), phi);
    const bool within =
        Rat(1) - wj.value <= slack * t_pow(q, static_cast<std::uint64_t>(j) * (m + 1));
    if (!within)
      j0 = J + 1;  // bound violated here; any earlier streak is void
    else if (j0 > j)
      j0 = j;
  }
  if (J > 0 && j0 > J)
    throw std::domain_error("truncation too shallow to certify the tail bound");
  out.value = Rat(num, den);

  // sum_{j>J} phi_j * 2(S+1) t^{j(m+1)} <= 2(S+1)/(J+1) * sum q^{-jm}.
  const std::uint64_t tail_exp = (static_cast<std::uint64_t>(J) + 1) * m;
  out.tail_bound = Rat(2) * slack * t_pow(q, tail_exp) /
                   (Rat(J + 1) * (Rat(1) - t_pow(q, static_cast<std::uint64_t>(m))));
  return out;
}

std::pair<Rat, Rat> binom_identity(int M) {
  if (M < 1) throw std::domain_error("need M >= 1");
  Rat lhs(0);
  for (int k = 1; k <= M; ++k) {
    const Rat term(1, factorial(static_cast<unsigned>(k)) *
                          factorial(static_cast<unsigned>(M - k)));
    lhs += (k % 2 == 1) ? -term : term;
  }
  const Rat rhs = -Rat(1, factorial(static_cast<unsigned>(M)));
  if (lhs != rhs) throw std::logic_error("alternating factorial identity failed");
  return {lhs, rhs};
}

std::pair<Rat, Rat> conclusion_reference(std::uint64_t q) {
  if (q < 2) throw std::domain_error("field order must be at least 2");
  const BigInt qb(q);
  const Rat uniform = Rat(1) - Rat(1, qb * qb + qb);
  const Rat density = (Rat(1) - t_pow(q, 2)) * (Rat(1) - t_pow(q, 3));
  if (!(uniform > density))
    throw std::logic_error("uniform probability should exceed the density");
  return {uniform, density};
}

}  // namespace coprime
