// Ground-truth engine: exhaustive enumeration and seeded Monte Carlo over
// polynomial tuples, edge labelings, and constant/polynomial matrix tuples.
//
// Everything here is the slow-but-unarguable side of the library. The
// closed-form side (formulas.hpp) is tested against these counts, so this
// module deliberately avoids sharing code paths with it: counts come from
// walking the actual objects.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "coprime/graph.hpp"
#include "coprime/poly.hpp"
#include "coprime/rat.hpp"

namespace coprime {

enum class CensusMode { exhaustive, montecarlo };

/// Knobs shared by the census operations. The ceiling caps the number of
/// events an exhaustive enumeration may visit; `threads = 0` means "use the
/// hardware count". Results never depend on the worker count: the index
/// space is split into disjoint ranges and merged by integer addition.
struct CensusOptions {
  std::uint64_t ceiling = 1ull << 24;
  int threads = 0;
  std::uint64_t samples = 100000;  // Monte Carlo draws, where applicable
  std::uint64_t seed = 0;
};

struct CensusResult {
  BigInt total;
  BigInt hits;
  Rat probability;
  CensusMode mode = CensusMode::exhaustive;
  // Monte Carlo only:
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> samples;
  std::optional<Rat> ci_low, ci_high;  // 99% score interval, rounded outward
};

/// One edge labeling of a graph: labels[e] belongs to edges[e] of the graph
/// it was built against, and every label must be monic and square-free.
struct Labeling {
  std::vector<Poly> labels;
};

/// Throws std::invalid_argument unless the labeling has one label per edge,
/// each monic and square-free. The per-vertex lcm of incident labels is
/// returned (vertex 1 first) for callers that want the degree profile.
std::vector<Poly> validate_labeling(const Graph& graph, const Labeling& labeling);

/// Exhaustive count of N-tuples of monic polynomials with the given degrees
/// whose collective gcd is 1.
CensusResult count_setwise_coprime(std::uint64_t q, const std::vector<int>& degrees,
                                   const CensusOptions& opts = {});

/// Exhaustive count of monic tuples that are coprime along every edge of
/// the graph (degrees[i] is the degree at vertex i+1).
CensusResult count_graph_coprime(std::uint64_t q, const std::vector<int>& degrees,
                                 const Graph& graph, const CensusOptions& opts = {});

/// The same probability as count_graph_coprime, but evaluated through the
/// inclusion-exclusion sum over square-free edge labelings: each labeling
/// contributes (-1)^(sum of factor counts) * t^(sum of per-vertex lcm
/// degrees), with labelings pruned as soon as a vertex lcm exceeds its
/// degree bound. Agreement with the census is the content of the identity;
/// the two sides share no code.
Rat graph_labeling_sum(std::uint64_t q, const std::vector<int>& degrees,
                       const Graph& graph, const CensusOptions& opts = {});

/// Probability that a uniform tuple of N constant m x m matrices over the
/// field with q^j elements yields a full-row-rank block chain: exhaustive
/// over all (q^j)^(m*m*N) tuples.
CensusResult wj_bruteforce(int m, int N, std::uint64_t q, int j,
                           const CensusOptions& opts = {});

/// Same event restricted in the numerator to tuples in which every block is
/// singular (the correction term of the rank recursion). The denominator is
/// still the full tuple space.
CensusResult wj_hat_bruteforce(int m, int N, std::uint64_t q, int j,
                               const CensusOptions& opts = {});

/// Seeded Monte Carlo estimate of the full-row-rank probability, with a 99%
/// score confidence interval. Identical (seed, samples) give identical
/// results, independent of the thread count.
CensusResult wj_montecarlo(int m, int N, std::uint64_t q, int j,
                           std::uint64_t samples, std::uint64_t seed,
                           const CensusOptions& opts = {});

enum class DensityEvent { pairwise_coprime, setwise_coprime };

struct DensityPoint {
  std::uint64_t cutoff = 0;  // entries range over the first cutoff+1 polynomials
  Rat fraction;
  CensusMode mode = CensusMode::exhaustive;
  bool aligned = false;  // cutoff+1 is a power of q (the natural block size)
  // Matrix scans also report the fraction among tuples of nonsingular
  // blocks, since the probability model only ever draws nonsingular ones
  // while the density counts every tuple.
  std::optional<Rat> nonsingular_fraction;
  std::optional<Rat> ci_low, ci_high;  // Monte Carlo only
};

struct DensityScan {
  std::vector<DensityPoint> points;
  std::string model;  // human-readable description of the event
  std::optional<std::uint64_t> seed, samples;  // echoed when any point sampled
};

/// Fraction of N-tuples drawn from the first n+1 polynomials (zero and
/// non-monic included) satisfying the event, for each cutoff n. Exhaustive
/// only; a cutoff whose tuple space exceeds the ceiling is an error.
/// Convention at the degenerate end: gcd involving only zeros is not
/// coprime, and a pair (0, f) counts as coprime exactly when f is a nonzero
/// constant.
DensityScan density_scan_polys(int N, std::uint64_t q,
                               const std::vector<std::uint64_t>& cutoffs,
                               DensityEvent event, const CensusOptions& opts = {});

/// Fraction of N-tuples of m x m polynomial matrices with entries among the
/// first n+1 polynomials whose block chain is left prime, per cutoff.
/// Cutoffs beyond the ceiling switch to seeded Monte Carlo instead of
/// failing; sampled points carry confidence intervals.
DensityScan density_scan_matrices(int m, int N, std::uint64_t q,
                                  const std::vector<std::uint64_t>& cutoffs,
                                  const CensusOptions& opts = {});

/// 99% score (Wilson) interval for hits successes in n trials, rounded
/// outward to rationals with denominator 10^12 and clamped to [0, 1].
std::pair<Rat, Rat> wilson_ci99(std::uint64_t hits, std::uint64_t n);

}  // namespace coprime
