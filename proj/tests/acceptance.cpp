// Acceptance gate: one line per criterion, nonzero exit if any fails.
//
// Each criterion owns its tolerance. Exact statements are compared in
// rational arithmetic; asymptotic statements are bounded-residual checks with
// the constant fitted here, never assumed; stochastic statements state their
// coverage target. Wall-clock budgets appear where the statement includes
// one.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "coprime/census.hpp"
#include "coprime/formulas.hpp"
#include "coprime/polymatrix.hpp"
#include "coprime/rng.hpp"
#include "coprime/verify.hpp"

using namespace coprime;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void criterion(int number, const std::string& label,
               const std::function<void(std::ostringstream&)>& body) {
  std::ostringstream detail;
  bool pass = true;
  const auto t0 = Clock::now();
  try {
    body(detail);
  } catch (const std::exception& e) {
    pass = false;
    detail << (detail.str().empty() ? "" : "; ") << "exception: " << e.what();
  }
  const double ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
  if (!pass) ++failures;
  std::printf("%s  %2d  %-34s  %7.0f ms  %s\n", pass ? "PASS" : "FAIL", number,
              label.c_str(), ms, detail.str().c_str());
  std::fflush(stdout);
}

[[noreturn]] void bail(const std::string& msg) { throw std::runtime_error(msg); }

void require(bool ok, const std::string& msg) {
  if (!ok) bail(msg);
}

void require_budget(double ms, double budget_ms, std::ostringstream& out) {
  if (ms > budget_ms) {
    std::ostringstream s;
    s << "over budget: " << ms << " ms > " << budget_ms << " ms";
    bail(s.str());
  }
  out << " [" << static_cast<long>(ms) << " ms of " << static_cast<long>(budget_ms)
      << " ms budget]";
}

double elapsed_ms(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

Rat rat_abs(const Rat& r) { return r < Rat(0) ? Rat(-r) : r; }

}  // namespace

// 1. Exhaustive setwise-coprimality census equals 1 - q^-(N-1) for every
//    degree vector with entries in {1,2,3}, N in {2,3}, q in {2,3}.
static void setwise_closed_form(std::ostringstream& out) {
  const auto t0 = Clock::now();
  int cases = 0;
  for (std::uint64_t q : {2, 3})
    for (int N : {2, 3}) {
      const Rat want = Rat(1) - rpow(Rat(BigInt(1), BigInt(q)), N - 1);
      std::vector<int> degs(static_cast<std::size_t>(N), 1);
      while (true) {
        CensusResult c = count_setwise_coprime(q, degs);
        if (c.probability != want) {
          std::ostringstream s;
          s << "mismatch at q=" << q << " N=" << N << ": " << rat_string(c.probability)
            << " != " << rat_string(want);
          bail(s.str());
        }
        ++cases;
        std::size_t i = 0;
        while (i < degs.size() && degs[i] == 3) degs[i++] = 1;
        if (i == degs.size()) break;
        ++degs[i];
      }
    }
  out << cases << " degree vectors exact";
  require_budget(elapsed_ms(t0), 30000, out);
}

// 2. The signed labeling sum reproduces the exhaustive census probability on
//    a spread of graphs, degree vectors, and fields.
static void labeling_identity(std::ostringstream& out) {
  const auto t0 = Clock::now();
  struct Inst {
    Graph g;
    std::vector<int> degs;
    bool small_field_only = false;
  };
  const std::vector<Inst> instances = {
      {Graph::complete(2), {1, 1}},
      {Graph::complete(2), {2, 2}},
      {Graph::complete(2), {3, 3}},
      {Graph::complete(2), {1, 3}},
      {Graph::complete(3), {1, 1, 1}},
      {Graph::complete(3), {2, 2, 2}},
      {Graph::complete(3), {3, 3, 3}},
      {Graph::complete(3), {1, 2, 3}},
      {Graph::complete(4), {1, 1, 1, 1}},
      {Graph::complete(4), {2, 2, 2, 2}},
      {Graph::complete(4), {1, 2, 3, 1}},
      // the all-cubic K4 label universe fits the ceiling only over GF(2)
      {Graph::complete(4), {3, 3, 3, 3}, true},
      {Graph::path(3), {1, 1, 1}},
      {Graph::path(3), {3, 2, 3}},
      {Graph::path(4), {2, 1, 1, 2}},
      {Graph::disjoint_edges(2), {2, 2, 2, 2}},
      {Graph::disjoint_edges(2), {1, 3, 3, 1}},
  };
  int checked = 0;
  for (std::uint64_t q : {2, 3})
    for (const Inst& inst : instances) {
      if (inst.small_field_only && q != 2) continue;
      CensusResult census = count_graph_coprime(q, inst.degs, inst.g);
      Rat sum = graph_labeling_sum(q, inst.degs, inst.g);
      if (sum != census.probability) {
        std::ostringstream s;
        s << "instance " << checked << " (q=" << q << "): labeling sum " << rat_string(sum)
          << " != census " << rat_string(census.probability);
        bail(s.str());
      }
      ++checked;
    }
  require(checked >= 30, "fewer than 30 instances");
  out << checked << " instances exact";
  require_budget(elapsed_ms(t0), 120000, out);
}

// 3. Three-polynomial probability: residual against 1 - 3t + c2 t^2 is
//    O(t^3) with one fitted constant K <= 64 across q, where c2 depends on
//    how many prescribed degrees equal one; the wrong c2 breaks the bound.
static void degree_one_sensitivity(std::ostringstream& out) {
  const Graph k3 = Graph::complete(3);
  const std::vector<std::uint64_t> qs = {2, 3, 4, 5, 7, 8, 9};
  Rat residual[2][7];  // [N1-branch: 0 -> all degree 2, 1 -> all degree 1][q]
  Rat k_fit(0);
  for (int branch = 0; branch < 2; ++branch) {
    const std::vector<int> degs =
        branch == 0 ? std::vector<int>{2, 2, 2} : std::vector<int>{1, 1, 1};
    const Rat c2 = branch == 0 ? Rat(5) : Rat(2);
    for (std::size_t i = 0; i < qs.size(); ++i) {
      const std::uint64_t q = qs[i];
      const Rat t(BigInt(1), BigInt(q));
      const Rat exact = count_graph_coprime(q, degs, k3).probability;
      residual[branch][i] = rat_abs(exact - (Rat(1) - Rat(3) * t + c2 * t * t));
      const Rat scaled = residual[branch][i] * Rat(BigInt(q * q * q));
      if (scaled > k_fit) k_fit = scaled;
    }
  }
  require(k_fit <= Rat(64), "fitted constant exceeds 64: " + decimal_string(k_fit, 6));

  // swap the t^2 coefficients at q = 9: both residuals must now violate the
  // fitted bound, showing the degree-one count genuinely enters at t^2
  const Rat t9(BigInt(1), BigInt(9));
  const Rat bound = k_fit * rpow(t9, 3);
  for (int branch = 0; branch < 2; ++branch) {
    const std::vector<int> degs =
        branch == 0 ? std::vector<int>{2, 2, 2} : std::vector<int>{1, 1, 1};
    const Rat wrong_c2 = branch == 0 ? Rat(2) : Rat(5);
    const Rat exact = count_graph_coprime(9, degs, k3).probability;
    const Rat wrong = rat_abs(exact - (Rat(1) - Rat(3) * t9 + wrong_c2 * t9 * t9));
    require(wrong > bound, "swapped coefficient stays inside the bound");
  }
  out << "K_fit = " << decimal_string(k_fit, 4) << " <= 64 over q in {2..9}; swapped c2 "
      << "violates at q=9";
}

// 4. Per-rank matrix counts and unit-group orders, against enumeration.
static void rank_counts(std::ostringstream& out) {
  long long enumerated = 0;
  for (std::uint64_t q : {2, 3}) {
    FieldPtr F = field_of_order(q);
    for (int k = 1; k <= 3; ++k)
      for (int n = 1; n <= 3; ++n) {
        std::vector<long long> by_rank(static_cast<std::size_t>(std::min(k, n)) + 1, 0);
        std::uint64_t space = 1;
        for (int i = 0; i < k * n; ++i) space *= q;
        for (std::uint64_t code = 0; code < space; ++code) {
          ConstMatrix m(F, k, n);
          std::uint64_t rest = code;
          for (int r = 0; r < k; ++r)
            for (int c = 0; c < n; ++c) {
              m.set(r, c, static_cast<std::uint32_t>(rest % q));
              rest /= q;
            }
          ++by_rank[static_cast<std::size_t>(const_rank(m))];
          ++enumerated;
        }
        require(by_rank[0] == 1, "rank zero must be unique");
        for (int r = 1; r <= std::min(k, n); ++r)
          if (rank_census(k, n, r, q) != Rat(BigInt(by_rank[static_cast<std::size_t>(r)]))) {
            std::ostringstream s;
            s << "rank_census(" << k << "," << n << "," << r << "," << q << ") != enumeration";
            bail(s.str());
          }
      }
  }
  require(gl_count(2, 2) == BigInt(6), "|GL_2(F_2)| != 6");
  require(gl_count(2, 3) == BigInt(48), "|GL_2(F_3)| != 48");
  require(Rat(gl_count(2, 2)) == rank_census(2, 2, 2, 2), "group order vs census");
  require(Rat(gl_count(2, 3)) == rank_census(2, 2, 2, 3), "group order vs census");
  out << enumerated << " matrices enumerated, all per-rank counts exact";
}

// 5. Full-row-rank chain machinery: pinned values, recursion closure with
//    brute-forced correction, and vanishing of the correction for m <= N-1.
static void chain_recursion(std::ostringstream& out) {
  const auto t0 = Clock::now();
  require(wj_bruteforce(1, 2, 2, 1).probability == Rat(BigInt(3), BigInt(4)),
          "W_1(2) != 3/4 at m=1, q=2");
  require(wj_bruteforce(1, 3, 2, 1).probability == Rat(BigInt(1), BigInt(2)),
          "W_1(3) != 1/2 at m=1, q=2");
  require(wj_bruteforce(2, 2, 2, 1).probability == Rat(BigInt(105), BigInt(128)),
          "W_1(2) != 105/128 at m=2, q=2");
  require(wj_exact_pair(2, 2, 1) == Rat(BigInt(105), BigInt(128)), "closed form disagrees");

  struct GridPoint {
    int m, N, j;
    std::uint64_t q;
  };
  std::vector<GridPoint> grid;
  for (int m : {1, 2})
    for (int N : {2, 3})
      for (std::uint64_t q : {2, 3}) grid.push_back({m, N, 1, q});
  grid.push_back({1, 2, 2, 2});
  for (const GridPoint& g : grid) {
    std::vector<Rat> w = {Rat(1), Rat(1)};
    for (int n = 2; n <= g.N; ++n) {
      const Rat direct = wj_bruteforce(g.m, n, g.q, g.j).probability;
      const Rat hat = wj_hat_bruteforce(g.m, n, g.q, g.j).probability;
      const Rat via_recursion = wj_recursion(g.m, n, g.q, g.j, w, hat);
      if (via_recursion != direct) {
        std::ostringstream s;
        s << "recursion open at m=" << g.m << " N=" << n << " q=" << g.q << " j=" << g.j;
        bail(s.str());
      }
      w.push_back(direct);
    }
  }

  int vanish = 0;
  for (std::uint64_t q : {2, 3}) {
    require(wj_hat_bruteforce(1, 2, q, 1).hits == BigInt(0), "correction at (1,2) nonzero");
    require(wj_hat_bruteforce(1, 3, q, 1).hits == BigInt(0), "correction at (1,3) nonzero");
    require(wj_hat_bruteforce(2, 3, q, 1).hits == BigInt(0), "correction at (2,3) nonzero");
    vanish += 3;
  }
  out << grid.size() << " closure points exact, " << vanish
      << " all-singular corrections vanish";
  require_budget(elapsed_ms(t0), 300000, out);
}

// 6. The staircase-chain criterion and the lcrm-based definition decide the
//    same tuples, exhaustively for scalars and on sampled 2x2 triples.
static void criterion_equivalence(std::ostringstream& out) {
  FieldPtr F = build_field(2, 1);
  long long scalar_checked = 0;
  for (const std::vector<int>& degs : {std::vector<int>{1, 1, 1}, {1, 2, 1}}) {
    std::vector<std::vector<Poly>> choices;
    for (int d : degs) choices.push_back(monic_polys(F, d));
    const std::size_t sizes[3] = {choices[0].size(), choices[1].size(), choices[2].size()};
    for (std::size_t a = 0; a < sizes[0]; ++a)
      for (std::size_t b = 0; b < sizes[1]; ++b)
        for (std::size_t c = 0; c < sizes[2]; ++c) {
          std::vector<PolyMatrix> blocks;
          for (const Poly* p :
               {&choices[0][a], &choices[1][b], &choices[2][c]}) {
            PolyMatrix m(F, 1, 1);
            m.at(0, 0) = *p;
            blocks.push_back(m);
          }
          if (is_mutually_left_coprime_block(blocks) !=
              is_mutually_left_coprime_direct(blocks))
            bail("scalar disagreement");
          ++scalar_checked;
        }
  }

  CounterRng rng(2024);
  std::uint64_t ctr = 0;
  int sampled = 0, coprime = 0;
  while (sampled < 200) {
    std::vector<PolyMatrix> blocks;
    bool nonsingular = true;
    for (int b = 0; b < 3; ++b) {
      PolyMatrix m(F, 2, 2);
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) m.at(i, j) = index_to_poly(F, rng.bounded(ctr++, 16));
      if (det_poly(m).is_zero()) nonsingular = false;
      blocks.push_back(m);
    }
    if (!nonsingular) continue;
    ++sampled;
    const bool chain = is_mutually_left_coprime_block(blocks);
    if (chain) ++coprime;
    if (chain != is_mutually_left_coprime_direct(blocks)) bail("matrix disagreement");
  }
  require(coprime > 0 && coprime < sampled, "sample failed to exercise both outcomes");
  out << scalar_checked << " scalar triples + " << sampled
      << " sampled 2x2 triples agree (" << coprime << " coprime)";
}

// 7. Truncated density products land on the two-matrix limits with the
//    certified tail bracketing the gap. Budget: 10 s.
static void density_limits(std::ostringstream& out) {
  const auto t0 = Clock::now();
  TruncatedProduct pair = pairwise_density_truncated(2, 2, 20);
  const double pv = to_double(pair.value), pt = to_double(pair.tail_bound);
  require(std::abs(pv - 0.5) < 1e-4, "pairwise truncation misses 1/2 by more than 1e-4");
  require(pv * std::exp(-pt) <= 0.5 && 0.5 <= pv * std::exp(pt),
          "pairwise tail fails to bracket 1/2");

  TruncatedProduct mut = mutual_density_truncated(
      2, 2, 2, 12, [](int j) { return WjValue{wj_exact_pair(2, 2, j), true}; });
  const double mv = to_double(mut.value), mt = to_double(mut.tail_bound);
  const double limit = 21.0 / 32.0;
  require(std::abs(mv - limit) < 1e-3, "mutual truncation misses 21/32 by more than 1e-3");
  require(mv * std::exp(-mt) <= limit && limit <= mv * std::exp(mt),
          "mutual tail fails to bracket 21/32");
  require(mut.exact, "mutual product lost exactness");
  out << "pairwise J=20 off by " << std::abs(pv - 0.5) << ", mutual J=12 off by "
      << std::abs(mv - limit) << ", both bracketed";
  require_budget(elapsed_ms(t0), 10000, out);
}

// 8. Density scans converge to the limits: matrices exhaustively to cutoff 7
//    and sampled at 15; polynomials exhaustively to cutoff 63. Budget: 5 min.
static void density_scans(std::ostringstream& out) {
  const auto t0 = Clock::now();
  CensusOptions opts;
  opts.samples = 1000000;
  opts.seed = 0;
  DensityScan mat = density_scan_matrices(2, 2, 2, {1, 3, 7, 15}, opts);
  require(mat.points.size() == 4, "expected four matrix scan points");
  for (int i = 0; i < 3; ++i)
    require(mat.points[static_cast<std::size_t>(i)].mode == CensusMode::exhaustive,
            "small cutoffs must be exhaustive");
  require(mat.points[3].mode == CensusMode::montecarlo, "cutoff 15 must be sampled");
  const double mat_last = to_double(mat.points[3].fraction);
  require(std::abs(mat_last - 21.0 / 32.0) <= 0.02,
          "matrix scan fraction at cutoff 15 misses 21/32 by more than 0.02");

  DensityScan pol = density_scan_polys(2, 2, {3, 7, 15, 31, 63},
                                       DensityEvent::pairwise_coprime);
  const double pol_last = to_double(pol.points.back().fraction);
  require(std::abs(pol_last - 0.5) <= 0.02,
          "polynomial scan fraction at cutoff 63 misses 1/2 by more than 0.02");
  out << "matrix fraction " << mat_last << " -> 21/32, polynomial fraction " << pol_last
      << " -> 1/2";
  require_budget(elapsed_ms(t0), 300000, out);
}

// 9. Exact identities: the alternating binomial sum, the degree-weighted
//    irreducible count, and the coincidence of the two t-expansions.
static void exact_identities(std::ostringstream& out) {
  for (int M = 1; M <= 30; ++M) {
    auto [lhs, rhs] = binom_identity(M);
    require(lhs == rhs, "alternating binomial identity fails");
  }
  for (std::uint64_t q : {2, 3, 4})
    for (unsigned n = 1; n <= 6; ++n) {
      BigInt sum = 0;
      for (unsigned d = 1; d <= n; ++d)
        if (n % d == 0) sum += BigInt(d) * irreducible_count(d, BigInt(q));
      require(sum == ipow(BigInt(q), n), "degree-weighted irreducible sum != q^n");
    }
  for (int N = 2; N <= 10; ++N) {
    AsymptoticCoeffs dens = pairwise_density_asymptotic(N);
    AsymptoticCoeffs unif = pairwise_uniform_asymptotic(N, 0, 2);
    for (int e = 0; e <= 2; ++e)
      require(dens.coeff_at(e) == unif.coeff_at(e), "expansion coefficients differ");
  }
  out << "binomial M<=30, irreducible sums n<=6, expansion coincidence N<=10";
}

// 10. Calibration: the 99% score interval covers the known probability in at
//     least 95 of 100 seeded runs. Budget: 1 min.
static void interval_calibration(std::ostringstream& out) {
  const auto t0 = Clock::now();
  const Rat truth(BigInt(3), BigInt(4));
  int covered = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    CensusResult r = wj_montecarlo(1, 2, 2, 1, 10000, seed);
    if (*r.ci_low <= truth && truth <= *r.ci_high) ++covered;
  }
  require(covered >= 95, "coverage below 95 of 100");
  out << covered << "/100 intervals cover 3/4";
  require_budget(elapsed_ms(t0), 60000, out);
}

int main() {
  std::printf("acceptance run: exact formulas vs enumeration, densities, calibration\n");
  criterion(1, "setwise closed form", setwise_closed_form);
  criterion(2, "labeling identity", labeling_identity);
  criterion(3, "degree-one sensitivity", degree_one_sensitivity);
  criterion(4, "rank counts", rank_counts);
  criterion(5, "chain recursion closure", chain_recursion);
  criterion(6, "criterion equivalence", criterion_equivalence);
  criterion(7, "density limits", density_limits);
  criterion(8, "density scan convergence", density_scans);
  criterion(9, "exact identities", exact_identities);
  criterion(10, "interval calibration", interval_calibration);

  // and the library's own self-checks, as a single composite line
  criterion(11, "self-check suites", [](std::ostringstream& out) {
    auto results = verify_suite("all");
    int bad = 0;
    for (const CheckResult& r : results)
      if (!r.pass) {
        ++bad;
        out << (out.str().empty() ? "" : "; ") << r.name << ": " << r.detail;
      }
    require(bad == 0, "self-checks failed");
    out << results.size() << " checks passed";
  });

  if (failures == 0) {
    std::printf("all criteria passed\n");
    return 0;
  }
  std::printf("%d criteria FAILED\n", failures);
  return 1;
}
