// Exact-rational evaluators for the closed-form counts, probabilities and
// truncated infinite products, with explicit tail accounting.
#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "coprime/rat.hpp"

namespace coprime {

/// A finite initial segment of an asymptotic expansion in t = 1/q.
///
/// `terms` lists the explicitly known coefficients, sorted by exponent;
/// `order` is the exponent at which the unknown error term begins. For the
/// per-degree expansions the natural variable is t^j rather than t, recorded
/// in `variable_power` (1 for plain t): a term with exponent e stands for
/// coeff * t^(e * variable_power).
struct AsymptoticCoeffs {
  struct Term {
    int exponent;
    Rat coeff;
  };
  std::vector<Term> terms;
  int order = 0;
  int variable_power = 1;

  /// Coefficient at the given exponent (0 if the ladder skips it).
  Rat coeff_at(int exponent) const;
  Rat c0() const { return coeff_at(0); }
  Rat c1() const { return coeff_at(1); }
  Rat c2() const { return coeff_at(2); }

  /// Evaluate the explicit part at t = 1/q (error term dropped).
  Rat eval(std::uint64_t q) const;
};

/// A truncated infinite product with a certified tail.
///
/// `value` is the exact product of the factors with j <= depth; `tail_bound`
/// bounds |log| of the omitted factor, so the full product lies in
/// [value*exp(-tail_bound), value*exp(tail_bound)]. `exact` is false when
/// any retained factor came from sampling rather than exact evaluation.
struct TruncatedProduct {
  Rat value;
  int depth = 0;
  Rat tail_bound;
  bool exact = true;
};

/// Number of k x n matrices over a field with q elements of rank exactly r.
/// Integer-valued by construction; 1 <= r <= min(k, n) or std::domain_error.
Rat rank_census(int k, int n, int r, std::uint64_t q);

/// Order of the group of invertible n x n matrices over a q-element field.
BigInt gl_count(int n, std::uint64_t q);

/// Probability that N independent uniform scalars admit no common root
/// anywhere: 1 - (1/q)^(N-1). Requires N >= 2.
Rat setwise_coprime_prob(int N, std::uint64_t q);

/// Degree-2 expansion of the probability that N uniformly drawn polynomials
/// with prescribed degrees (N1 of them equal to one) are pairwise coprime:
/// 1 - C(N,2) t + (1/24)(N-1)(N-2)(3N^2+11N-12*N1) t^2 + O(t^3).
/// The coefficients do not depend on q; q is validated only.
AsymptoticCoeffs pairwise_uniform_asymptotic(int N, int N1, std::uint64_t q);

/// Truncation of the natural-density product for pairwise coprimality,
///   prod_j ((1-t^j)^(N-1) (1 + (N-1) t^j))^(phi_j),   phi_j = #irreducibles,
/// over j <= J, with tail_bound = N^2 q^(-J) / (J (1 - 1/q)).
TruncatedProduct pairwise_density_truncated(int N, std::uint64_t q, int J);

/// Degree-2 expansion of the pairwise-coprimality density; coincides with
/// pairwise_uniform_asymptotic at N1 = 0.
AsymptoticCoeffs pairwise_density_asymptotic(int N);

/// Leading deficit of the probability that N uniform nonsingular m x m
/// polynomial matrices are mutually left coprime:
///   1 - sum_{y=2}^{min(m+1,N)} C(N,y) t^m + O(t^(m+1)).
/// Requires m, N >= 2.
AsymptoticCoeffs mutual_uniform_asymptotic(int m, int N);

/// Exact probability that a uniform m x 2m constant matrix over the field
/// with q^j elements has full row rank: prod_{l=m+1}^{2m} (1 - t^(jl)).
Rat wj_exact_pair(int m, std::uint64_t q, int j);

/// One step of the inclusion-exclusion recursion for the full-row-rank
/// probability W_j(N) of the (N-1)m x Nm constant block chain:
///   W_j(N) = sum_{i=1}^N (-1)^(i-1) C(N,i) a^i W_j(N-i) + What,
/// where a = |GL_m| / q^(j m^2) over the q^j-element field. `W` must hold
/// W_j(0..N-1) with W[0] = W[1] = 1. When m <= N-1 the correction term
/// vanishes identically, so a nonzero `What` is rejected.
Rat wj_recursion(int m, int N, std::uint64_t q, int j, const std::vector<Rat>& W,
                 const Rat& What);

/// Expansion of W_j(N) in the variable u = t^j:
///   1 - sum_{y=2}^{min(m+1,N)} C(N,y) u^(m+1) + O(u^(m+2)).
AsymptoticCoeffs wj_asymptotic(int m, int N, int j);

/// A per-degree factor for mutual_density_truncated: the exact (or sampled)
/// value of W_j(N) over the q^j-element field.
struct WjValue {
  Rat value;
  bool exact = true;
};
using WjProvider = std::function<WjValue(int j)>;

/// Truncation of the mutual-left-coprimality density prod_j W_j(N)^(phi_j)
/// over j <= J. The tail uses 1 - W_j <= (S+1) t^(j(m+1)) with S the deficit
/// sum; the bound is checked against the provided values before being
/// trusted (std::domain_error when the check fails at j = J), and the result
/// is flagged non-exact when any provided factor is.
TruncatedProduct mutual_density_truncated(int m, int N, std::uint64_t q, int J,
                                          const WjProvider& provider);

/// Both sides of sum_{k=1}^M (-1)^k / (k! (M-k)!) = -1/M!, evaluated
/// exactly and checked for equality. Requires M >= 1.
std::pair<Rat, Rat> binom_identity(int M);

/// Reference values for the square 2x2 case: uniform probability
/// 1 - 1/(q^2+q) and natural density (1-q^-2)(1-q^-3). The first is checked
/// to exceed the second.
std::pair<Rat, Rat> conclusion_reference(std::uint64_t q);

/// Metadata note attached to uniform-ensemble evaluations: the sampling
/// model behind them is specified externally, not implemented here.
inline constexpr const char* kExternalModelNote = "model defined in external reference";

}  // namespace coprime
