#include "coprime/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "coprime/formulas.hpp"
#include "coprime/gf.hpp"
#include "coprime/graph.hpp"
#include "coprime/poly.hpp"
#include "coprime/polymatrix.hpp"
#include "coprime/rng.hpp"

namespace coprime {
namespace {

// Runs one named check. The body writes its success detail into the stream;
// a mismatch is reported by throwing, and the exception text becomes the
// failure detail. Checks never abort the rest of the suite.
template <typename Body>
void run_check(std::vector<CheckResult>& out, std::string name, Body&& body) {
  CheckResult r;
  r.name = std::move(name);
  try {
    std::ostringstream detail;
    body(detail);
    r.pass = true;
    r.detail = detail.str();
  } catch (const std::exception& e) {
    r.pass = false;
    r.detail = e.what();
  }
  out.push_back(std::move(r));
}

[[noreturn]] void fail(const std::string& msg) { throw std::runtime_error(msg); }

void expect_rat(const Rat& got, const Rat& want, const std::string& what) {
  if (got != want) {
    fail(what + ": got " + rat_string(got) + ", want " + rat_string(want));
  }
}

std::string vec_str(const std::vector<int>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v[i]);
  }
  return s + ")";
}

// Square constant matrix whose entries are the base-q digits of `id`,
// row-major; the canonical enumeration order used by the census kernels.
ConstMatrix const_from_id(const FieldPtr& field, int m, std::uint64_t id) {
  ConstMatrix mat(field, m, m);
  std::uint64_t q = field->order();
  for (int r = 0; r < m; ++r) {
    for (int c = 0; c < m; ++c) {
      mat.set(r, c, static_cast<std::uint32_t>(id % q));
      id /= q;
    }
  }
  return mat;
}

// Staircase of N square blocks: block row i carries block i and block i+1
// side by side. Returns its rank.
int const_chain_rank(const std::vector<ConstMatrix>& blocks) {
  const int n = static_cast<int>(blocks.size());
  const int m = blocks[0].rows();
  ConstMatrix chain(blocks[0].field(), (n - 1) * m, n * m);
  for (int i = 0; i + 1 < n; ++i) {
    for (int r = 0; r < m; ++r) {
      for (int c = 0; c < m; ++c) {
        chain.set(i * m + r, i * m + c, blocks[i].at(r, c));
        chain.set(i * m + r, (i + 1) * m + c, blocks[i + 1].at(r, c));
      }
    }
  }
  return const_rank(std::move(chain));
}

// ---------------------------------------------------------------------------
// identities: formulas against each other and against elementary counts.
// ---------------------------------------------------------------------------
void suite_identities(std::vector<CheckResult>& out) {
  run_check(out, "identities/binomial-alternating-sum", [](std::ostringstream& d) {
    Rat last;
    for (int M = 1; M <= 30; ++M) {
      auto [lhs, rhs] = binom_identity(M);
      expect_rat(lhs, rhs, "M=" + std::to_string(M));
      last = lhs;
    }
    d << "sum_{k=1}^{M} (-1)^k C(M,k)/M! equals -1/M! for M=1..30; at M=30 both sides are "
      << rat_string(last);
  });

  run_check(out, "identities/rank-count-partition", [](std::ostringstream& d) {
    int cases = 0;
    for (std::uint64_t q : {2, 3}) {
      for (int k = 1; k <= 3; ++k) {
        for (int n = 1; n <= 3; ++n) {
          Rat sum = 1;  // the zero matrix is the single rank-0 point
          for (int r = 1; r <= std::min(k, n); ++r) sum += rank_census(k, n, r, q);
          Rat want(ipow(BigInt(q), static_cast<std::uint64_t>(k) * n));
          expect_rat(sum, want,
                     "k=" + std::to_string(k) + " n=" + std::to_string(n) +
                         " q=" + std::to_string(q));
          ++cases;
        }
      }
    }
    d << cases << " (k,n,q) cases: 1 + sum_r N(k,n,r) == q^{kn}; "
      << "e.g. k=n=3, q=3 gives 19683 both ways";
  });

  run_check(out, "identities/irreducible-degree-sieve", [](std::ostringstream& d) {
    for (std::uint64_t q : {2, 3, 4}) {
      for (unsigned n = 1; n <= 6; ++n) {
        BigInt sum = 0;
        for (unsigned dd = 1; dd <= n; ++dd) {
          if (n % dd == 0) sum += BigInt(dd) * irreducible_count(dd, BigInt(q));
        }
        if (sum != ipow(BigInt(q), n)) {
          fail("q=" + std::to_string(q) + " n=" + std::to_string(n) +
               ": sum_{d|n} d*phi_d = " + sum.str() + " != q^n");
        }
      }
    }
    d << "sum_{d|n} d*phi_d(q) == q^n for n<=6, q in {2,3,4}; "
      << "e.g. q=2, n=6: 2+2*1+3*2+6*9 = 64";
  });

  run_check(out, "identities/irreducible-table-counts", [](std::ostringstream& d) {
    const struct {
      std::uint64_t q;
      int max_deg;
    } grids[] = {{2, 5}, {3, 4}, {4, 3}};
    BigInt last;
    for (const auto& g : grids) {
      FieldPtr field = field_of_order(g.q);
      for (int deg = 1; deg <= g.max_deg; ++deg) {
        BigInt listed(irreducible_polys(field, deg).size());
        BigInt counted = irreducible_count(static_cast<unsigned>(deg), BigInt(g.q));
        if (listed != counted) {
          fail("q=" + std::to_string(g.q) + " deg=" + std::to_string(deg) +
               ": table has " + listed.str() + ", Gauss count is " + counted.str());
        }
        last = counted;
      }
    }
    d << "enumerated irreducible tables match the Gauss/Moebius count on every grid point; "
      << "e.g. " << last.str() << " monic irreducible cubics over GF(4)";
  });

  run_check(out, "identities/asymptote-coincidence", [](std::ostringstream& d) {
    for (int N = 2; N <= 10; ++N) {
      AsymptoticCoeffs dens = pairwise_density_asymptotic(N);
      AsymptoticCoeffs unif = pairwise_uniform_asymptotic(N, 0, 2);
      expect_rat(dens.c0(), unif.c0(), "N=" + std::to_string(N) + " c0");
      expect_rat(dens.c1(), unif.c1(), "N=" + std::to_string(N) + " c1");
      expect_rat(dens.c2(), unif.c2(), "N=" + std::to_string(N) + " c2");
      Rat want_c1 = -Rat(static_cast<long long>(N) * (N - 1), 2);
      expect_rat(dens.c1(), want_c1, "N=" + std::to_string(N) + " c1 closed form");
      if (dens.order != unif.order) {
        fail("N=" + std::to_string(N) + ": error orders differ");
      }
    }
    d << "natural-density expansion == uniform expansion with no nonsingularity "
      << "restriction for N=2..10; c1 == -N(N-1)/2 throughout";
  });

  run_check(out, "identities/flat-reference-inequality", [](std::ostringstream& d) {
    auto [u2, d2] = conclusion_reference(2);
    expect_rat(u2, Rat(5, 6), "q=2 uniform");
    expect_rat(d2, Rat(21, 32), "q=2 density");
    auto [u3, d3] = conclusion_reference(3);
    expect_rat(u3, Rat(11, 12), "q=3 uniform");
    expect_rat(d3, Rat(208, 243), "q=3 density");
    for (std::uint64_t q = 2; q <= 17; ++q) {
      auto [u, dd] = conclusion_reference(q);
      if (!(u > dd)) {
        fail("q=" + std::to_string(q) + ": uniform " + rat_string(u) +
             " not above density " + rat_string(dd));
      }
    }
    d << "uniform probability exceeds natural density for the 2x2 pair at every "
      << "q in 2..17; q=2: 5/6 > 21/32, q=3: 11/12 > 208/243";
  });
}

// ---------------------------------------------------------------------------
// oracles: every closed formula against an independent exhaustive census.
// ---------------------------------------------------------------------------
void suite_oracles(std::vector<CheckResult>& out, const CensusOptions& opts) {
  run_check(out, "oracles/setwise-probability-census", [&](std::ostringstream& d) {
    int cases = 0;
    Rat last_prob;
    BigInt last_total;
    for (std::uint64_t q : {2, 3}) {
      for (int N : {2, 3}) {
        Rat formula = setwise_coprime_prob(N, q);
        std::vector<int> degs(static_cast<std::size_t>(N), 1);
        for (;;) {
          CensusResult res = count_setwise_coprime(q, degs, opts);
          expect_rat(res.probability, formula,
                     "q=" + std::to_string(q) + " degrees=" + vec_str(degs));
          last_prob = res.probability;
          last_total = res.total;
          ++cases;
          std::size_t i = 0;
          while (i < degs.size() && ++degs[i] > 3) degs[i++] = 1;
          if (i == degs.size()) break;
        }
      }
    }
    d << cases << " degree vectors (q in {2,3}, N in {2,3}, degrees in {1,2,3}): "
      << "exhaustive monic census equals 1 - q^{1-N} every time; last case "
      << rat_string(last_prob) << " over " << last_total.str() << " tuples";
  });

  run_check(out, "oracles/graph-coprimality-inclusion-exclusion",
            [&](std::ostringstream& d) {
    struct Inst {
      Graph g;
      std::vector<int> degs;
      std::uint64_t q;
    };
    std::vector<Inst> insts = {
        {Graph::complete(2), {1, 1}, 2},
        {Graph::complete(2), {2, 3}, 2},
        {Graph::complete(2), {2, 2}, 3},
        {Graph::complete(3), {1, 1, 1}, 2},
        {Graph::complete(3), {2, 2, 2}, 2},
        {Graph::complete(3), {1, 2, 3}, 2},
        {Graph::complete(3), {1, 1, 2}, 3},
        {Graph::complete(4), {1, 1, 1, 1}, 2},
        {Graph::complete(4), {2, 1, 2, 1}, 2},
        {Graph::complete(4), {2, 2, 2, 2}, 3},
        {Graph::path(3), {1, 1, 1}, 2},
        {Graph::path(3), {2, 2, 2}, 3},
        {Graph::path(4), {1, 1, 2, 1}, 2},
        {Graph::disjoint_edges(2), {1, 1, 1, 1}, 2},
        {Graph::disjoint_edges(2), {2, 2, 1, 3}, 2},
        {Graph::edgeless(3), {1, 2, 1}, 2},
    };
    // A seeded batch of irregular graphs on top of the fixed shapes.
    CounterRng rng(0x5eed);
    std::uint64_t ctr = 0;
    for (int t = 0; t < 10; ++t) {
      int n = 2 + static_cast<int>(rng.bounded(ctr++, 3));
      std::vector<std::pair<int, int>> edges;
      for (int i = 1; i <= n; ++i) {
        for (int jj = i + 1; jj <= n; ++jj) {
          if (rng.bounded(ctr++, 2)) edges.emplace_back(i, jj);
        }
      }
      std::uint64_t q = rng.bounded(ctr++, 2) ? 3 : 2;
      std::vector<int> degs(static_cast<std::size_t>(n));
      for (auto& dg : degs) {
        dg = 1 + static_cast<int>(rng.bounded(ctr++, q == 2 ? 3 : 2));
      }
      insts.push_back({Graph(n, std::move(edges)), std::move(degs), q});
    }
    Rat last_val;
    for (const Inst& inst : insts) {
      Rat sum = graph_labeling_sum(inst.q, inst.degs, inst.g, opts);
      CensusResult res = count_graph_coprime(inst.q, inst.degs, inst.g, opts);
      expect_rat(sum, res.probability,
                 "q=" + std::to_string(inst.q) + " degrees=" + vec_str(inst.degs) +
                     " edges=" + std::to_string(inst.g.edges.size()));
      last_val = sum;
    }
    d << insts.size() << " graph instances (complete, path, matching, edgeless, "
      << "seeded irregular): signed square-free labeling sum equals the exhaustive "
      << "census; last value " << rat_string(last_val);
  });

  run_check(out, "oracles/rank-count-bruteforce", [](std::ostringstream& d) {
    Rat sample;
    for (std::uint64_t q : {2, 3}) {
      FieldPtr field = field_of_order(q);
      for (int k = 1; k <= 3; ++k) {
        for (int n = 1; n <= 3; ++n) {
          const int rmax = std::min(k, n);
          std::vector<BigInt> counts(static_cast<std::size_t>(rmax) + 1, BigInt(0));
          std::uint64_t total = 1;
          for (int i = 0; i < k * n; ++i) total *= q;
          for (std::uint64_t id = 0; id < total; ++id) {
            ConstMatrix mat(field, k, n);
            std::uint64_t rest = id;
            for (int r = 0; r < k; ++r) {
              for (int c = 0; c < n; ++c) {
                mat.set(r, c, static_cast<std::uint32_t>(rest % q));
                rest /= q;
              }
            }
            ++counts[static_cast<std::size_t>(const_rank(std::move(mat)))];
          }
          if (counts[0] != 1) fail("rank-0 count is not exactly the zero matrix");
          for (int r = 1; r <= rmax; ++r) {
            expect_rat(Rat(counts[static_cast<std::size_t>(r)]),
                       rank_census(k, n, r, q),
                       "k=" + std::to_string(k) + " n=" + std::to_string(n) +
                           " r=" + std::to_string(r) + " q=" + std::to_string(q));
          }
          sample = Rat(counts[static_cast<std::size_t>(rmax)]);
        }
      }
    }
    d << "per-rank counts of all k x n matrices (k,n<=3, q in {2,3}) match the "
      << "product formula; e.g. " << rat_string(sample)
      << " full-rank 3x3 matrices over GF(3)";
  });

  run_check(out, "oracles/invertible-count-enumeration", [](std::ostringstream& d) {
    const struct {
      int n;
      std::uint64_t q;
      std::uint64_t want;
    } cases[] = {{2, 2, 6}, {2, 3, 48}, {3, 2, 168}};
    for (const auto& cse : cases) {
      FieldPtr field = field_of_order(cse.q);
      std::uint64_t total = 1;
      for (int i = 0; i < cse.n * cse.n; ++i) total *= cse.q;
      std::uint64_t invertible = 0;
      for (std::uint64_t id = 0; id < total; ++id) {
        if (const_rank(const_from_id(field, cse.n, id)) == cse.n) ++invertible;
      }
      if (BigInt(invertible) != gl_count(cse.n, cse.q) || invertible != cse.want) {
        fail("n=" + std::to_string(cse.n) + " q=" + std::to_string(cse.q) +
             ": enumerated " + std::to_string(invertible) + ", formula " +
             gl_count(cse.n, cse.q).str());
      }
    }
    d << "|GL_2(2)|=6, |GL_2(3)|=48, |GL_3(2)|=168 by direct enumeration and by "
      << "the product formula";
  });

  run_check(out, "oracles/chain-probability-bruteforce", [&](std::ostringstream& d) {
    const struct {
      int m;
      std::uint64_t q;
      int j;
    } cases[] = {{1, 2, 1}, {1, 2, 2}, {1, 3, 1}, {2, 2, 1}, {2, 3, 1}};
    Rat last;
    for (const auto& cse : cases) {
      Rat closed = wj_exact_pair(cse.m, cse.q, cse.j);
      CensusResult res = wj_bruteforce(cse.m, 2, cse.q, cse.j, opts);
      expect_rat(res.probability, closed,
                 "m=" + std::to_string(cse.m) + " q=" + std::to_string(cse.q) +
                     " j=" + std::to_string(cse.j));
      last = closed;
    }
    d << "pair full-rank probability: exhaustive census over GF(q^j) equals "
      << "prod_{l=m+1}^{2m}(1-q^{-jl}); e.g. m=2, q=3, j=1: " << rat_string(last);
  });

  run_check(out, "oracles/block-criterion-vs-definition", [](std::ostringstream& d) {
    FieldPtr field = field_of_order(2);
    // Every triple of nonzero scalar blocks with entries of degree <= 2.
    int scalar_cases = 0;
    for (std::uint64_t a = 1; a <= 7; ++a) {
      for (std::uint64_t b = 1; b <= 7; ++b) {
        for (std::uint64_t c = 1; c <= 7; ++c) {
          std::vector<PolyMatrix> blocks;
          for (std::uint64_t idx : {a, b, c}) {
            PolyMatrix blk(field, 1, 1);
            blk.at(0, 0) = index_to_poly(field, idx);
            blocks.push_back(std::move(blk));
          }
          bool via_chain = is_mutually_left_coprime_block(blocks);
          bool via_def = is_mutually_left_coprime_direct(blocks);
          if (via_chain != via_def) {
            fail("scalar triple (" + blocks[0].at(0, 0).str() + ", " +
                 blocks[1].at(0, 0).str() + ", " + blocks[2].at(0, 0).str() +
                 "): chain says " + std::to_string(via_chain) +
                 ", definition says " + std::to_string(via_def));
          }
          ++scalar_cases;
        }
      }
    }
    // Seeded nonsingular 2x2 triples with linear entries.
    CounterRng rng(0xb10c);
    std::uint64_t ctr = 0;
    int sampled = 0;
    while (sampled < 25) {
      std::vector<PolyMatrix> blocks;
      bool ok = true;
      for (int bi = 0; bi < 3; ++bi) {
        PolyMatrix blk(field, 2, 2);
        for (int r = 0; r < 2; ++r) {
          for (int c = 0; c < 2; ++c) {
            blk.at(r, c) = index_to_poly(field, rng.bounded(ctr++, 4));
          }
        }
        if (det_poly(blk).is_zero()) {
          ok = false;
          break;
        }
        blocks.push_back(std::move(blk));
      }
      if (!ok) continue;
      if (is_mutually_left_coprime_block(blocks) !=
          is_mutually_left_coprime_direct(blocks)) {
        fail("sampled 2x2 triple #" + std::to_string(sampled) +
             ": chain criterion disagrees with the pairwise-lcrm definition");
      }
      ++sampled;
    }
    d << scalar_cases << " scalar triples and " << sampled
      << " nonsingular 2x2 triples: staircase-chain criterion agrees with the "
      << "definition via least common right multiples";
  });
}

// ---------------------------------------------------------------------------
// recursion: the rank recursion, its correction term, and block deletion.
// ---------------------------------------------------------------------------
void suite_recursion(std::vector<CheckResult>& out, const CensusOptions& opts) {
  run_check(out, "recursion/rank-recursion-closure", [&](std::ostringstream& d) {
    const struct {
      int m, N;
      std::uint64_t q;
      int j;
    } cases[] = {{1, 2, 2, 1}, {1, 2, 3, 1}, {1, 3, 2, 1}, {1, 3, 3, 1},
                 {2, 2, 2, 1}, {2, 2, 3, 1}, {2, 3, 2, 1}, {2, 3, 3, 1},
                 {1, 2, 2, 2}};
    Rat last;
    for (const auto& cse : cases) {
      std::vector<Rat> W(static_cast<std::size_t>(cse.N), Rat(1));
      for (int k = 2; k < cse.N; ++k) {
        W[static_cast<std::size_t>(k)] =
            wj_bruteforce(cse.m, k, cse.q, cse.j, opts).probability;
      }
      Rat what = wj_hat_bruteforce(cse.m, cse.N, cse.q, cse.j, opts).probability;
      Rat direct = wj_bruteforce(cse.m, cse.N, cse.q, cse.j, opts).probability;
      Rat rec = wj_recursion(cse.m, cse.N, cse.q, cse.j, W, what);
      expect_rat(rec, direct,
                 "m=" + std::to_string(cse.m) + " N=" + std::to_string(cse.N) +
                     " q=" + std::to_string(cse.q) + " j=" + std::to_string(cse.j));
      last = direct;
    }
    d << "9 grid points: the recursion (binomial sum over invertible prefixes "
      << "plus all-singular correction) reproduces the exhaustive probability; "
      << "e.g. m=2, N=3, q=3, j=1: " << rat_string(last);
  });

  run_check(out, "recursion/hat-term-vanishes", [&](std::ostringstream& d) {
    for (std::uint64_t q : {2, 3}) {
      for (auto [m, N] : {std::pair{1, 2}, std::pair{1, 3}, std::pair{2, 3}}) {
        CensusResult res = wj_hat_bruteforce(m, N, q, 1, opts);
        if (res.hits != 0) {
          fail("m=" + std::to_string(m) + " N=" + std::to_string(N) +
               " q=" + std::to_string(q) + ": " + res.hits.str() +
               " all-singular tuples give a full-rank chain");
        }
      }
    }
    d << "no all-singular tuple yields a full-rank chain when m <= N-1 "
      << "(m,N in {(1,2),(1,3),(2,3)}, q in {2,3})";
  });

  run_check(out, "recursion/correction-guard-rejects", [](std::ostringstream& d) {
    std::vector<Rat> W = {Rat(1), Rat(1), wj_exact_pair(1, 2, 1)};
    try {
      wj_recursion(1, 3, 2, 1, W, Rat(1, 2));
    } catch (const std::domain_error& e) {
      d << "nonzero correction term with m <= N-1 is rejected: " << e.what();
      return;
    }
    fail("a nonzero correction term was accepted although m <= N-1 forces it to vanish");
  });

  run_check(out, "recursion/nonsingular-block-deletion", [](std::ostringstream& d) {
    // Exhaustive scalar case: dropping any nonzero block from a length-3
    // staircase never changes whether the chain has full row rank.
    for (std::uint64_t q : {2, 3}) {
      FieldPtr field = field_of_order(q);
      for (std::uint64_t a = 0; a < q; ++a) {
        for (std::uint64_t b = 0; b < q; ++b) {
          for (std::uint64_t c = 0; c < q; ++c) {
            std::vector<ConstMatrix> blocks = {const_from_id(field, 1, a),
                                               const_from_id(field, 1, b),
                                               const_from_id(field, 1, c)};
            bool full = const_chain_rank(blocks) == 2;
            for (int i = 0; i < 3; ++i) {
              if (blocks[static_cast<std::size_t>(i)].at(0, 0) == 0) continue;
              std::vector<ConstMatrix> rest;
              for (int k = 0; k < 3; ++k) {
                if (k != i) rest.push_back(blocks[static_cast<std::size_t>(k)]);
              }
              if ((const_chain_rank(rest) == 1) != full) {
                fail("scalar chain (" + std::to_string(a) + "," + std::to_string(b) +
                     "," + std::to_string(c) + ") over GF(" + std::to_string(q) +
                     "): deleting block " + std::to_string(i + 1) +
                     " changes full-rankness");
              }
            }
          }
        }
      }
    }
    // Seeded 2x2 triples over GF(2).
    FieldPtr f2 = field_of_order(2);
    CounterRng rng(0xde1e7e);
    int checked = 0;
    for (std::uint64_t s = 0; s < 300; ++s) {
      std::vector<ConstMatrix> blocks;
      for (int i = 0; i < 3; ++i) {
        blocks.push_back(const_from_id(f2, 2, rng.bounded(3 * s + i, 16)));
      }
      bool full = const_chain_rank(blocks) == 4;
      for (int i = 0; i < 3; ++i) {
        if (const_rank(blocks[static_cast<std::size_t>(i)]) != 2) continue;
        std::vector<ConstMatrix> rest;
        for (int k = 0; k < 3; ++k) {
          if (k != i) rest.push_back(blocks[static_cast<std::size_t>(k)]);
        }
        if ((const_chain_rank(rest) == 2) != full) {
          fail("sample " + std::to_string(s) + ": deleting invertible block " +
               std::to_string(i + 1) + " changes full-rankness");
        }
        ++checked;
      }
    }
    d << "full-rankness is invariant under deleting an invertible block: all "
      << "scalar length-3 chains over GF(2) and GF(3), plus " << checked
      << " deletions across 300 seeded 2x2 triples";
  });

  run_check(out, "recursion/closed-form-via-recursion", [&](std::ostringstream& d) {
    const struct {
      int m;
      std::uint64_t q;
      int j;
    } cases[] = {{1, 2, 1}, {2, 2, 1}, {1, 3, 1}, {1, 2, 2}};
    for (const auto& cse : cases) {
      Rat what = wj_hat_bruteforce(cse.m, 2, cse.q, cse.j, opts).probability;
      Rat rec = wj_recursion(cse.m, 2, cse.q, cse.j, {Rat(1), Rat(1)}, what);
      expect_rat(rec, wj_exact_pair(cse.m, cse.q, cse.j),
                 "m=" + std::to_string(cse.m) + " q=" + std::to_string(cse.q) +
                     " j=" + std::to_string(cse.j));
    }
    d << "N=2 recursion with a brute-forced correction term lands exactly on "
      << "prod_{l=m+1}^{2m}(1-q^{-jl}) at four grid points";
  });
}

// ---------------------------------------------------------------------------
// density: truncated products bracket their limits, tails shrink, scans agree.
// ---------------------------------------------------------------------------
void suite_density(std::vector<CheckResult>& out, const CensusOptions& opts) {
  run_check(out, "density/pairwise-product-brackets-limit", [](std::ostringstream& d) {
    const struct {
      std::uint64_t q;
      int J;
      Rat limit;
    } cases[] = {{2, 20, Rat(1, 2)}, {3, 15, Rat(2, 3)}};
    TruncatedProduct first{};
    for (const auto& cse : cases) {
      TruncatedProduct r = pairwise_density_truncated(2, cse.q, cse.J);
      double v = to_double(r.value);
      double t = to_double(r.tail_bound);
      double lim = to_double(cse.limit);
      if (!(v * std::exp(-t) <= lim * (1 + 1e-12) &&
            lim <= v * std::exp(t) * (1 + 1e-12))) {
        fail("q=" + std::to_string(cse.q) + " J=" + std::to_string(cse.J) +
             ": limit " + rat_string(cse.limit) + " escapes [" +
             decimal_string(r.value) + "*exp(-" + decimal_string(r.tail_bound) +
             "), ...*exp(+...)]");
      }
      if (cse.q == 2) first = r;
    }
    double gap = std::abs(to_double(first.value) - 0.5);
    if (gap > 1e-4) {
      fail("q=2 J=20 truncation sits " + std::to_string(gap) + " away from 1/2");
    }
    d << "N=2 truncated products bracket the zeta limit 1-1/q; q=2, J=20: "
      << decimal_string(first.value, 10) << " vs 0.5, tail bound "
      << decimal_string(first.tail_bound, 4);
  });

  run_check(out, "density/mutual-product-brackets-limit", [](std::ostringstream& d) {
    WjProvider exact1 = [](int j) { return WjValue{wj_exact_pair(1, 2, j), true}; };
    WjProvider exact2 = [](int j) { return WjValue{wj_exact_pair(2, 2, j), true}; };
    TruncatedProduct r1 = mutual_density_truncated(1, 2, 2, 16, exact1);
    TruncatedProduct r2 = mutual_density_truncated(2, 2, 2, 12, exact2);
    const struct {
      const TruncatedProduct* r;
      Rat limit;
      const char* tag;
    } cases[] = {{&r1, Rat(1, 2), "m=1"}, {&r2, Rat(21, 32), "m=2"}};
    for (const auto& cse : cases) {
      if (!cse.r->exact) fail(std::string(cse.tag) + ": exact flag dropped");
      double v = to_double(cse.r->value);
      double t = to_double(cse.r->tail_bound);
      double lim = to_double(cse.limit);
      if (!(v * std::exp(-t) <= lim * (1 + 1e-12) &&
            lim <= v * std::exp(t) * (1 + 1e-12))) {
        fail(std::string(cse.tag) + ": limit " + rat_string(cse.limit) +
             " escapes the certified bracket");
      }
    }
    if (std::abs(to_double(r2.value) - 21.0 / 32.0) > 1e-3) {
      fail("m=2 J=12 truncation is not within 1e-3 of 21/32");
    }
    d << "mutual products bracket their limits: m=1 -> 1/2, m=2 -> 21/32; "
      << "m=2, J=12 value " << decimal_string(r2.value, 10);
  });

  run_check(out, "density/tail-bound-monotone", [](std::ostringstream& d) {
    Rat prev;
    for (int J = 1; J <= 10; ++J) {
      TruncatedProduct r = pairwise_density_truncated(3, 2, J);
      if (r.value <= 0 || r.value >= 1) fail("pairwise value escaped (0,1)");
      if (J > 1 && !(r.tail_bound < prev)) {
        fail("pairwise tail bound fails to shrink at J=" + std::to_string(J));
      }
      prev = r.tail_bound;
    }
    WjProvider exact2 = [](int j) { return WjValue{wj_exact_pair(2, 2, j), true}; };
    Rat mprev;
    for (int J = 2; J <= 8; J += 2) {
      TruncatedProduct r = mutual_density_truncated(2, 2, 2, J, exact2);
      if (J > 2 && !(r.tail_bound < mprev)) {
        fail("mutual tail bound fails to shrink at J=" + std::to_string(J));
      }
      mprev = r.tail_bound;
    }
    d << "tail bounds strictly decrease with truncation depth (pairwise N=3 "
      << "J=1..10, mutual m=2 J=2..8); final mutual bound "
      << decimal_string(mprev, 4);
  });

  run_check(out, "density/scan-agreement-m1", [&](std::ostringstream& d) {
    std::vector<std::uint64_t> cutoffs = {15, 63};
    DensityScan sp = density_scan_polys(2, 2, cutoffs,
                                        DensityEvent::pairwise_coprime, opts);
    DensityScan sm = density_scan_matrices(1, 2, 2, cutoffs, opts);
    for (std::size_t i = 0; i < cutoffs.size(); ++i) {
      expect_rat(sm.points[i].fraction, sp.points[i].fraction,
                 "cutoff " + std::to_string(cutoffs[i]));
      if (!sm.points[i].nonsingular_fraction) {
        fail("matrix scan reports no nonsingular-restricted fraction");
      }
    }
    double gap = std::abs(to_double(sp.points.back().fraction) - 0.5);
    if (gap > 0.05) {
      fail("pairwise fraction at cutoff 63 sits " + std::to_string(gap) +
           " away from the density 1/2");
    }
    d << "1x1 matrix-chain scan coincides with the polynomial pairwise scan at "
      << "cutoffs {15,63}; fraction at 63 is "
      << rat_string(sp.points.back().fraction);
  });

  run_check(out, "density/scan-aligned-flag", [&](std::ostringstream& d) {
    DensityScan s = density_scan_polys(2, 2, {2, 3},
                                       DensityEvent::pairwise_coprime, opts);
    if (s.points[0].aligned || !s.points[1].aligned) {
      fail("alignment flags wrong: cutoff 2 must be unaligned, cutoff 3 aligned "
           "(4 = 2^2 polynomials per coordinate)");
    }
    d << "cutoff 3 (a full degree block over GF(2)) is flagged aligned, cutoff 2 is not";
  });

  run_check(out, "density/truncation-depth-zero", [](std::ostringstream& d) {
    WjProvider exact2 = [](int j) { return WjValue{wj_exact_pair(2, 2, j), true}; };
    TruncatedProduct r = mutual_density_truncated(2, 2, 2, 0, exact2);
    expect_rat(r.value, Rat(1), "empty product");
    if (!r.exact) fail("empty product lost the exact flag");
    if (r.tail_bound <= 0) fail("tail bound of the empty product must stay positive");
    d << "depth-0 truncation is the empty product 1 with a positive tail bound ("
      << decimal_string(r.tail_bound, 4) << ")";
  });

  run_check(out, "density/estimate-flag-propagates", [](std::ostringstream& d) {
    WjProvider mixed = [](int j) {
      return WjValue{wj_exact_pair(2, 2, j), j < 3};
    };
    WjProvider exact2 = [](int j) { return WjValue{wj_exact_pair(2, 2, j), true}; };
    TruncatedProduct est = mutual_density_truncated(2, 2, 2, 6, mixed);
    TruncatedProduct ref = mutual_density_truncated(2, 2, 2, 6, exact2);
    if (est.exact) fail("an estimated factor must clear the product's exact flag");
    expect_rat(est.value, ref.value, "value with estimated flags");
    d << "a single estimated factor clears the exact flag while leaving the "
      << "value untouched";
  });
}

}  // namespace

std::vector<CheckResult> verify_suite(const std::string& suite,
                                      const CensusOptions& opts) {
  const bool all = suite == "all";
  std::vector<CheckResult> out;
  bool known = false;
  if (all || suite == "identities") {
    suite_identities(out);
    known = true;
  }
  if (all || suite == "oracles") {
    suite_oracles(out, opts);
    known = true;
  }
  if (all || suite == "recursion") {
    suite_recursion(out, opts);
    known = true;
  }
  if (all || suite == "density") {
    suite_density(out, opts);
    known = true;
  }
  if (!known) {
    throw std::invalid_argument(
        "unknown suite '" + suite +
        "' (expected identities, oracles, recursion, density, or all)");
  }
  return out;
}

bool all_passed(const std::vector<CheckResult>& results) {
  return std::all_of(results.begin(), results.end(),
                     [](const CheckResult& r) { return r.pass; });
}

}  // namespace coprime
