#include "coprime/census.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <functional>
#include <stdexcept>
#include <thread>
#include <utility>

#include "coprime/polymatrix.hpp"
#include "coprime/rng.hpp"

namespace coprime {

namespace {

// ---------------------------------------------------------------------------
// Shared plumbing
// ---------------------------------------------------------------------------

// GF(q^j) for a prime power q: factor q once, then extend.
FieldPtr field_power(std::uint64_t q, int j) {
  if (j < 1) throw std::domain_error("extension exponent must be positive");
  FieldPtr base = field_of_order(q);
  return build_field(base->characteristic(),
                     base->extension_degree() * static_cast<std::uint32_t>(j));
}

// base^exp if it stays within `limit`, otherwise nullopt. Used for every
// "does this enumeration fit under the ceiling" decision, so the check has
// to be overflow-proof rather than fast.
std::optional<std::uint64_t> pow_within(std::uint64_t base, std::uint64_t exp,
                                        std::uint64_t limit) {
  if (base == 0) return exp == 0 ? std::optional<std::uint64_t>(1) : 0;
  std::uint64_t acc = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    if (acc > limit / base) return std::nullopt;
    acc *= base;
  }
  return acc;
}

[[noreturn]] void ceiling_exceeded() {
  throw std::length_error("enumeration ceiling exceeded");
}

// Per-worker counters, merged by addition: hit count, tuples whose blocks
// are all nonsingular, and hits among those.
struct Tally {
  std::uint64_t hits = 0;
  std::uint64_t nonsingular = 0;
  std::uint64_t nonsingular_hits = 0;
  Tally& operator+=(const Tally& o) {
    hits += o.hits;
    nonsingular += o.nonsingular;
    nonsingular_hits += o.nonsingular_hits;
    return *this;
  }
};

// Run `work(lo, hi, tally)` over a partition of [0, total) and sum the
// tallies. The partition depends only on (total, thread count), and since
// the merge is integer addition the result is identical for any thread
// count — exhaustive results must be bit-stable across machines.
Tally run_partitioned(std::uint64_t total, int threads,
                      const std::function<void(std::uint64_t, std::uint64_t, Tally&)>& work) {
  unsigned n = threads > 0 ? static_cast<unsigned>(threads)
                           : std::max(1u, std::thread::hardware_concurrency());
  if (total < 4096 || n == 1) {
    Tally t;
    work(0, total, t);
    return t;
  }
  n = static_cast<unsigned>(std::min<std::uint64_t>(n, total));
  std::vector<Tally> parts(n);
  std::vector<std::thread> pool;
  pool.reserve(n);
  const std::uint64_t chunk = total / n, extra = total % n;
  std::uint64_t lo = 0;
  for (unsigned i = 0; i < n; ++i) {
    const std::uint64_t hi = lo + chunk + (i < extra ? 1 : 0);
    pool.emplace_back([&work, &parts, i, lo, hi] { work(lo, hi, parts[i]); });
    lo = hi;
  }
  for (auto& th : pool) th.join();
  Tally sum;
  for (const Tally& t : parts) sum += t;
  return sum;
}

// ---------------------------------------------------------------------------
// Fixed-capacity polynomial kernel
//
// The scans visit up to ~2^24 tuples, so the inner loop cannot afford heap
// allocation or shared_ptr traffic. SP is a plain coefficient array
// (constant term first, `deg` = -1 for the zero polynomial); all routines
// touch only the active coefficients and swap pointers, never structs.
// ---------------------------------------------------------------------------

template <int Cap>
struct SP {
  int deg = -1;
  std::uint16_t c[Cap];
};

template <int Cap>
void sp_from_index(SP<Cap>& f, std::uint64_t idx, std::uint64_t q) {
  f.deg = -1;
  int i = 0;
  while (idx != 0) {
    if (i >= Cap) throw std::overflow_error("scan kernel degree capacity exceeded");
    f.c[i] = static_cast<std::uint16_t>(idx % q);
    if (f.c[i] != 0) f.deg = i;
    idx /= q;
    ++i;
  }
}

template <int Cap>
void sp_copy(SP<Cap>& dst, const SP<Cap>& src) {
  dst.deg = src.deg;
  for (int i = 0; i <= src.deg; ++i) dst.c[i] = src.c[i];
}

template <int Cap>
void sp_mul(const SP<Cap>& a, const SP<Cap>& b, SP<Cap>& out, const Field& F) {
  if (a.deg < 0 || b.deg < 0) {
    out.deg = -1;
    return;
  }
  if (a.deg + b.deg >= Cap)
    throw std::overflow_error("scan kernel degree capacity exceeded");
  out.deg = a.deg + b.deg;
  for (int i = 0; i <= out.deg; ++i) out.c[i] = 0;
  for (int i = 0; i <= a.deg; ++i) {
    if (a.c[i] == 0) continue;
    for (int j = 0; j <= b.deg; ++j)
      out.c[i + j] = static_cast<std::uint16_t>(F.add(out.c[i + j], F.mul(a.c[i], b.c[j])));
  }
}

template <int Cap>
void sp_sub(const SP<Cap>& a, const SP<Cap>& b, SP<Cap>& out, const Field& F) {
  out.deg = std::max(a.deg, b.deg);
  for (int i = 0; i <= out.deg; ++i) {
    const std::uint32_t ai = i <= a.deg ? a.c[i] : 0;
    const std::uint32_t bi = i <= b.deg ? b.c[i] : 0;
    out.c[i] = static_cast<std::uint16_t>(F.sub(ai, bi));
  }
  while (out.deg >= 0 && out.c[out.deg] == 0) --out.deg;
}

template <int Cap>
void sp_mod(SP<Cap>& a, const SP<Cap>& b, const Field& F) {
  while (a.deg >= b.deg) {
    const std::uint32_t factor = F.div(a.c[a.deg], b.c[b.deg]);
    const int shift = a.deg - b.deg;
    for (int j = 0; j < b.deg; ++j)
      a.c[shift + j] = static_cast<std::uint16_t>(F.sub(a.c[shift + j], F.mul(factor, b.c[j])));
    --a.deg;  // the leading term cancels by construction
    while (a.deg >= 0 && a.c[a.deg] == 0) --a.deg;
  }
}

// Destructive gcd; returns the buffer that ends up holding the result, so
// callers ping-pong two scratch buffers instead of copying structs.
template <int Cap>
SP<Cap>* sp_gcd(SP<Cap>* a, SP<Cap>* b, const Field& F) {
  while (b->deg >= 0) {
    sp_mod(*a, *b, F);
    std::swap(a, b);
  }
  return a;
}

// ---------------------------------------------------------------------------
// Constant-matrix kernel
// ---------------------------------------------------------------------------

// In-place Gaussian rank over the field; `a` is row-major rows x cols.
int flat_rank(std::uint32_t* a, int rows, int cols, const Field& F) {
  int rank = 0;
  for (int col = 0; col < cols && rank < rows; ++col) {
    int pivot = -1;
    for (int r = rank; r < rows && pivot < 0; ++r)
      if (a[r * cols + col] != 0) pivot = r;
    if (pivot < 0) continue;
    if (pivot != rank)
      for (int j = col; j < cols; ++j) std::swap(a[rank * cols + j], a[pivot * cols + j]);
    const std::uint32_t inv = F.inv(a[rank * cols + col]);
    for (int r = rank + 1; r < rows; ++r) {
      const std::uint32_t f = F.mul(a[r * cols + col], inv);
      if (f == 0) continue;
      for (int j = col; j < cols; ++j)
        a[r * cols + j] = F.sub(a[r * cols + j], F.mul(f, a[rank * cols + j]));
    }
    ++rank;
  }
  return rank;
}

constexpr int kMaxChainCells = 1024;

// Lay the block chain out row-major into `buf`: block row i carries block i
// at block-column i and block i+1 at block-column i+1, zeros elsewhere.
// `entry(b, r, c)` supplies entry (r,c) of block b.
template <typename EntryFn>
int chain_rank(int m, int N, const Field& F, std::uint32_t* buf, const EntryFn& entry) {
  const int rows = (N - 1) * m, cols = N * m;
  for (int i = 0; i + 1 < N; ++i)
    for (int r = 0; r < m; ++r) {
      std::uint32_t* row = buf + static_cast<std::size_t>(i * m + r) * cols;
      for (int c = 0; c < i * m; ++c) row[c] = 0;
      for (int c = 0; c < m; ++c) {
        row[i * m + c] = entry(i, r, c);
        row[(i + 1) * m + c] = entry(i + 1, r, c);
      }
      for (int c = (i + 2) * m; c < cols; ++c) row[c] = 0;
    }
  return flat_rank(buf, rows, cols, F);
}

// ---------------------------------------------------------------------------
// Monic-tuple enumeration (shared by the two counting ops)
// ---------------------------------------------------------------------------

struct MonicSpace {
  FieldPtr field;
  std::vector<std::vector<Poly>> per_position;  // all monics of the wanted degree
  std::uint64_t total = 1;
};

MonicSpace build_monic_space(std::uint64_t q, const std::vector<int>& degrees,
                             const CensusOptions& opts) {
  MonicSpace s;
  s.field = field_of_order(q);
  for (int d : degrees) {
    if (d < 0) throw std::invalid_argument("negative degree");
    const auto count = pow_within(q, static_cast<std::uint64_t>(d), opts.ceiling);
    if (!count || s.total > opts.ceiling / *count) ceiling_exceeded();
    s.total *= *count;
    s.per_position.push_back(monic_polys(s.field, d, opts.ceiling));
  }
  return s;
}

// Visit tuples [lo, hi) of the mixed-radix space; `pred` judges the tuple.
template <typename Pred>
void monic_tuples(const MonicSpace& s, std::uint64_t lo, std::uint64_t hi, Tally& tally,
                  const Pred& pred) {
  const std::size_t n = s.per_position.size();
  std::vector<std::size_t> digit(n);
  std::vector<const Poly*> tuple(n);
  std::uint64_t rest = lo;
  for (std::size_t i = 0; i < n; ++i) {  // least significant digit first
    const std::size_t radix = s.per_position[i].size();
    digit[i] = rest % radix;
    rest /= radix;
    tuple[i] = &s.per_position[i][digit[i]];
  }
  for (std::uint64_t idx = lo; idx < hi; ++idx) {
    if (pred(tuple)) ++tally.hits;
    // odometer step
    for (std::size_t i = 0; i < n; ++i) {
      if (++digit[i] < s.per_position[i].size()) {
        tuple[i] = &s.per_position[i][digit[i]];
        break;
      }
      digit[i] = 0;
      tuple[i] = &s.per_position[i][0];
    }
  }
}

CensusResult exhaustive_result(std::uint64_t total, std::uint64_t hits) {
  CensusResult r;
  r.total = total;
  r.hits = hits;
  r.probability = total == 0 ? Rat(0) : Rat(BigInt(hits), BigInt(total));
  r.mode = CensusMode::exhaustive;
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------
// Monic-tuple counts
// ---------------------------------------------------------------------------

CensusResult count_setwise_coprime(std::uint64_t q, const std::vector<int>& degrees,
                                   const CensusOptions& opts) {
  if (degrees.empty()) throw std::invalid_argument("empty degree vector");
  MonicSpace s = build_monic_space(q, degrees, opts);
  Tally t = run_partitioned(s.total, opts.threads,
                            [&](std::uint64_t lo, std::uint64_t hi, Tally& tally) {
                              monic_tuples(s, lo, hi, tally,
                                           [](const std::vector<const Poly*>& tuple) {
                                             Poly g = *tuple[0];
                                             for (std::size_t i = 1; i < tuple.size(); ++i) {
                                               g = gcd_monic(g, *tuple[i]);
                                               if (g.is_one()) return true;
                                             }
                                             return g.is_one();
                                           });
                            });
  return exhaustive_result(s.total, t.hits);
}

CensusResult count_graph_coprime(std::uint64_t q, const std::vector<int>& degrees,
                                 const Graph& graph, const CensusOptions& opts) {
  if (static_cast<int>(degrees.size()) != graph.vertex_count)
    throw std::invalid_argument("degree vector length must match vertex count");
  MonicSpace s = build_monic_space(q, degrees, opts);
  Tally t = run_partitioned(
      s.total, opts.threads, [&](std::uint64_t lo, std::uint64_t hi, Tally& tally) {
        monic_tuples(s, lo, hi, tally, [&graph](const std::vector<const Poly*>& tuple) {
          for (const auto& [i, j] : graph.edges)
            if (!gcd_monic(*tuple[i - 1], *tuple[j - 1]).is_one()) return false;
          return true;
        });
      });
  return exhaustive_result(s.total, t.hits);
}

// ---------------------------------------------------------------------------
// Inclusion-exclusion over edge labelings
// ---------------------------------------------------------------------------

std::vector<Poly> validate_labeling(const Graph& graph, const Labeling& labeling) {
  if (labeling.labels.size() != graph.edges.size())
    throw std::invalid_argument("labeling needs exactly one label per edge");
  if (labeling.labels.empty()) return {};
  const FieldPtr& F = labeling.labels.front().field();
  std::vector<Poly> vertex_lcm(static_cast<std::size_t>(graph.vertex_count), Poly::one(F));
  for (std::size_t e = 0; e < labeling.labels.size(); ++e) {
    const Poly& label = labeling.labels[e];
    if (!label.is_monic() || !is_squarefree(label))
      throw std::invalid_argument("labels must be monic and square-free");
    const auto [i, j] = graph.edges[e];
    auto& ki = vertex_lcm[static_cast<std::size_t>(i) - 1];
    auto& kj = vertex_lcm[static_cast<std::size_t>(j) - 1];
    ki = lcm_monic(ki, label);
    kj = lcm_monic(kj, label);
  }
  return vertex_lcm;
}

Rat graph_labeling_sum(std::uint64_t q, const std::vector<int>& degrees,
                       const Graph& graph, const CensusOptions& opts) {
  if (static_cast<int>(degrees.size()) != graph.vertex_count)
    throw std::invalid_argument("degree vector length must match vertex count");
  for (int d : degrees)
    if (d < 0) throw std::invalid_argument("negative degree");
  if (graph.edges.empty()) return Rat(1);

  FieldPtr F = field_of_order(q);

  // A square-free monic label is exactly a set of distinct irreducibles, so
  // labels are enumerated as subsets of the irreducible list (degree up to
  // the largest useful bound) and per-vertex lcms become set unions.
  int dmax = 0;
  std::vector<int> edge_bound;
  edge_bound.reserve(graph.edges.size());
  for (const auto& [i, j] : graph.edges) {
    const int b = std::min(degrees[i - 1], degrees[j - 1]);
    edge_bound.push_back(b);
    dmax = std::max(dmax, b);
  }

  std::vector<int> irr_deg;  // degree of each irreducible, in (degree, index) order
  for (int d = 1; d <= dmax; ++d)
    for (const Poly& p : irreducible_polys(F, d)) {
      (void)p;
      irr_deg.push_back(d);
    }
  if (irr_deg.size() > 63)
    throw std::length_error("label universe too large for the subset encoding");

  // Candidate labels sorted by degree then discovery order; an edge with
  // bound b uses the prefix of candidates with weight <= b. The identity
  // being summed is order-independent; the fixed order just makes runs and
  // pruning reproducible.
  struct Cand {
    std::uint64_t mask;
    int weight;
    int omega;
  };
  std::vector<Cand> cands;
  cands.push_back({0, 0, 0});  // the label 1
  std::function<void(std::size_t, std::uint64_t, int, int)> grow =
      [&](std::size_t next, std::uint64_t mask, int weight, int omega) {
        for (std::size_t i = next; i < irr_deg.size(); ++i) {
          const int w = weight + irr_deg[i];
          if (w > dmax) continue;
          cands.push_back({mask | (1ull << i), w, omega + 1});
          grow(i + 1, mask | (1ull << i), w, omega + 1);
        }
      };
  grow(0, 0, 0, 0);
  std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
    return a.weight != b.weight ? a.weight < b.weight : a.mask < b.mask;
  });

  // Per-edge candidate prefix, plus the ceiling guard on the raw labeling
  // count (pruning only shrinks the visited set).
  std::vector<std::size_t> prefix_end(graph.edges.size());
  std::uint64_t raw = 1;
  for (std::size_t e = 0; e < graph.edges.size(); ++e) {
    std::size_t end = 0;
    while (end < cands.size() && cands[end].weight <= edge_bound[e]) ++end;
    prefix_end[e] = end;
    if (end == 0 || raw > opts.ceiling / end) ceiling_exceeded();
    raw *= end;
  }

  const int n_vertices = graph.vertex_count;
  std::vector<std::uint64_t> vmask(n_vertices, 0);
  std::vector<int> vdeg(n_vertices, 0);
  int max_exp = 0;
  for (int d : degrees) max_exp += d;
  std::vector<long long> coeff(static_cast<std::size_t>(max_exp) + 1, 0);

  const auto added_weight = [&](std::uint64_t add_mask) {
    int w = 0;
    while (add_mask) {
      w += irr_deg[static_cast<std::size_t>(__builtin_ctzll(add_mask))];
      add_mask &= add_mask - 1;
    }
    return w;
  };

  std::function<void(std::size_t, int)> walk = [&](std::size_t e, int omega_parity) {
    if (e == graph.edges.size()) {
      int exp = 0;
      for (int l = 0; l < n_vertices; ++l) exp += vdeg[l];
      coeff[static_cast<std::size_t>(exp)] += omega_parity == 0 ? 1 : -1;
      return;
    }
    const int vi = graph.edges[e].first - 1, vj = graph.edges[e].second - 1;
    for (std::size_t ci = 0; ci < prefix_end[e]; ++ci) {
      const Cand& cand = cands[ci];
      const int add_i = added_weight(cand.mask & ~vmask[vi]);
      if (vdeg[vi] + add_i > degrees[vi]) continue;
      const std::uint64_t old_mask_i = vmask[vi];
      vmask[vi] |= cand.mask;
      vdeg[vi] += add_i;
      const int add_j = added_weight(cand.mask & ~vmask[vj]);
      if (vdeg[vj] + add_j <= degrees[vj]) {
        const std::uint64_t old_mask_j = vmask[vj];
        vmask[vj] |= cand.mask;
        vdeg[vj] += add_j;
        walk(e + 1, omega_parity ^ (cand.omega & 1));
        vmask[vj] = old_mask_j;
        vdeg[vj] -= add_j;
      }
      vmask[vi] = old_mask_i;
      vdeg[vi] -= add_i;
    }
  };
  walk(0, 0);

  Rat sum(0);
  for (int e = 0; e <= max_exp; ++e)
    if (coeff[static_cast<std::size_t>(e)] != 0)
      sum += Rat(coeff[static_cast<std::size_t>(e)]) * t_pow(q, static_cast<std::uint64_t>(e));
  return sum;
}

// ---------------------------------------------------------------------------
// Full-row-rank censuses over constant matrix tuples
// ---------------------------------------------------------------------------

namespace {

struct WjSpace {
  FieldPtr field;
  std::uint64_t Q = 0;
  int cells = 0;                       // m*m entries per block
  std::uint64_t mat_count = 0;         // Q^cells
  std::vector<std::uint32_t> entries;  // mat_count x cells entry table
  std::vector<std::uint8_t> singular;  // per matrix id
};

WjSpace build_wj_space(int m, int N, std::uint64_t q, int j, std::uint64_t ceiling,
                       std::uint64_t* space_out) {
  if (m < 1 || N < 2) throw std::domain_error("need m >= 1 and N >= 2");
  WjSpace s;
  s.field = field_power(q, j);
  s.Q = s.field->order();
  s.cells = m * m;
  const auto space =
      pow_within(s.Q, static_cast<std::uint64_t>(s.cells) * N, ceiling);
  if (!space) ceiling_exceeded();
  *space_out = *space;
  s.mat_count = *pow_within(s.Q, static_cast<std::uint64_t>(s.cells), ceiling);

  s.entries.resize(s.mat_count * s.cells);
  s.singular.resize(s.mat_count);
  std::vector<std::uint32_t> scratch(static_cast<std::size_t>(s.cells));
  for (std::uint64_t id = 0; id < s.mat_count; ++id) {
    std::uint64_t rest = id;
    for (int e = 0; e < s.cells; ++e) {
      s.entries[id * s.cells + e] = static_cast<std::uint32_t>(rest % s.Q);
      rest /= s.Q;
    }
    std::memcpy(scratch.data(), &s.entries[id * s.cells],
                sizeof(std::uint32_t) * static_cast<std::size_t>(s.cells));
    s.singular[id] = flat_rank(scratch.data(), m, m, *s.field) < m ? 1 : 0;
  }
  return s;
}

}  // namespace

CensusResult wj_bruteforce(int m, int N, std::uint64_t q, int j, const CensusOptions& opts) {
  std::uint64_t space = 0;
  WjSpace s = build_wj_space(m, N, q, j, opts.ceiling, &space);
  const int rows = (N - 1) * m, cols = N * m;
  if (rows * cols > kMaxChainCells) throw std::length_error("chain too large");

  Tally t = run_partitioned(
      space, opts.threads, [&](std::uint64_t lo, std::uint64_t hi, Tally& tally) {
        std::vector<std::uint64_t> id(static_cast<std::size_t>(N));
        std::uint32_t buf[kMaxChainCells];
        std::uint64_t rest = lo;
        for (int b = 0; b < N; ++b) {
          id[static_cast<std::size_t>(b)] = rest % s.mat_count;
          rest /= s.mat_count;
        }
        for (std::uint64_t idx = lo; idx < hi; ++idx) {
          const auto entry = [&](int b, int r, int c) {
            return s.entries[id[static_cast<std::size_t>(b)] * s.cells + r * m + c];
          };
          if (chain_rank(m, N, *s.field, buf, entry) == rows) ++tally.hits;
          for (int b = 0; b < N; ++b) {
            if (++id[static_cast<std::size_t>(b)] < s.mat_count) break;
            id[static_cast<std::size_t>(b)] = 0;
          }
        }
      });
  return exhaustive_result(space, t.hits);
}

CensusResult wj_hat_bruteforce(int m, int N, std::uint64_t q, int j,
                               const CensusOptions& opts) {
  std::uint64_t space = 0;
  WjSpace s = build_wj_space(m, N, q, j, opts.ceiling, &space);
  const int rows = (N - 1) * m, cols = N * m;
  if (rows * cols > kMaxChainCells) throw std::length_error("chain too large");

  // Only tuples made entirely of singular blocks can contribute, so the
  // walk runs over those alone; the denominator stays the full space.
  std::vector<std::uint64_t> singular_ids;
  for (std::uint64_t id = 0; id < s.mat_count; ++id)
    if (s.singular[id]) singular_ids.push_back(id);
  const std::uint64_t sub_space =
      singular_ids.empty()
          ? 0
          : *pow_within(singular_ids.size(), static_cast<std::uint64_t>(N), opts.ceiling);

  Tally t = run_partitioned(
      sub_space, opts.threads, [&](std::uint64_t lo, std::uint64_t hi, Tally& tally) {
        std::vector<std::uint64_t> pos(static_cast<std::size_t>(N));
        std::uint32_t buf[kMaxChainCells];
        std::uint64_t rest = lo;
        for (int b = 0; b < N; ++b) {
          pos[static_cast<std::size_t>(b)] = rest % singular_ids.size();
          rest /= singular_ids.size();
        }
        for (std::uint64_t idx = lo; idx < hi; ++idx) {
          const auto entry = [&](int b, int r, int c) {
            return s.entries[singular_ids[pos[static_cast<std::size_t>(b)]] * s.cells +
                             r * m + c];
          };
          if (chain_rank(m, N, *s.field, buf, entry) == rows) ++tally.hits;
          for (int b = 0; b < N; ++b) {
            if (++pos[static_cast<std::size_t>(b)] < singular_ids.size()) break;
            pos[static_cast<std::size_t>(b)] = 0;
          }
        }
      });
  return exhaustive_result(space, t.hits);
}

CensusResult wj_montecarlo(int m, int N, std::uint64_t q, int j, std::uint64_t samples,
                           std::uint64_t seed, const CensusOptions& opts) {
  if (m < 1 || N < 2) throw std::domain_error("need m >= 1 and N >= 2");
  if (samples < 1) throw std::domain_error("need at least one sample");
  FieldPtr F = field_power(q, j);
  const auto Q = static_cast<std::uint32_t>(F->order());
  const int cells = m * m;
  const int rows = (N - 1) * m, cols = N * m;
  if (rows * cols > kMaxChainCells) throw std::length_error("chain too large");
  const CounterRng rng(seed);
  const std::uint64_t draws_per_sample = static_cast<std::uint64_t>(cells) * N;

  Tally t = run_partitioned(
      samples, opts.threads, [&](std::uint64_t lo, std::uint64_t hi, Tally& tally) {
        std::uint32_t buf[kMaxChainCells];
        for (std::uint64_t sample = lo; sample < hi; ++sample) {
          const std::uint64_t base = sample * draws_per_sample;
          const auto entry = [&](int b, int r, int c) {
            return rng.bounded(base + static_cast<std::uint64_t>(b) * cells + r * m + c, Q);
          };
          if (chain_rank(m, N, *F, buf, entry) == rows) ++tally.hits;
        }
      });

  CensusResult r;
  r.total = samples;
  r.hits = t.hits;
  r.probability = Rat(BigInt(t.hits), BigInt(samples));
  r.mode = CensusMode::montecarlo;
  r.seed = seed;
  r.samples = samples;
  auto [lo, hi] = wilson_ci99(t.hits, samples);
  r.ci_low = lo;
  r.ci_high = hi;
  return r;
}

// ---------------------------------------------------------------------------
// Natural-density scans
// ---------------------------------------------------------------------------

namespace {

bool is_power_of(std::uint64_t value, std::uint64_t q) {
  if (value < q) return false;
  while (value % q == 0) value /= q;
  return value == 1;
}

// Shared tuple evaluation for the polynomial scans. `digits` holds N
// polynomial indices, each read as base-q coefficients.
struct PolyScanKernel {
  const Field& F;
  std::uint64_t q;
  int N;
  DensityEvent event;

  bool operator()(const std::uint64_t* digits) const {
    // Entries are small; 64 coefficient slots cover any index below 2^64.
    SP<64> entry[2], g[2], scratch;
    if (event == DensityEvent::pairwise_coprime) {
      for (int i = 0; i < N; ++i) {
        sp_from_index(entry[0], digits[i], q);
        for (int jj = i + 1; jj < N; ++jj) {
          sp_copy(g[0], entry[0]);
          sp_from_index(g[1], digits[jj], q);
          if (sp_gcd(&g[0], &g[1], F)->deg != 0) return false;
        }
      }
      return true;
    }
    // setwise: fold the gcd over nonzero entries; all-zero tuples fail.
    bool have = false;
    SP<64>* acc = &g[0];
    SP<64>* spare = &g[1];
    for (int i = 0; i < N; ++i) {
      sp_from_index(scratch, digits[i], q);
      if (scratch.deg < 0) continue;
      if (!have) {
        sp_copy(*acc, scratch);
        have = true;
      } else {
        sp_copy(*spare, scratch);
        SP<64>* r = sp_gcd(acc, spare, F);
        spare = (r == acc) ? spare : acc;
        acc = r;
      }
      if (have && acc->deg == 0) return true;
    }
    return have && acc->deg == 0;
  }
};

}  // namespace

DensityScan density_scan_polys(int N, std::uint64_t q,
                               const std::vector<std::uint64_t>& cutoffs,
                               DensityEvent event, const CensusOptions& opts) {
  if (N < 2) throw std::domain_error("need at least two tuple positions");
  if (!std::is_sorted(cutoffs.begin(), cutoffs.end()) ||
      std::adjacent_find(cutoffs.begin(), cutoffs.end()) != cutoffs.end())
    throw std::invalid_argument("cutoffs must be strictly increasing");
  FieldPtr F = field_of_order(q);

  DensityScan scan;
  scan.model = event == DensityEvent::pairwise_coprime
                   ? "pairwise-coprime over the first n+1 polynomials"
                   : "setwise-coprime over the first n+1 polynomials";
  for (std::uint64_t n : cutoffs) {
    const std::uint64_t count = n + 1;
    const auto space = pow_within(count, static_cast<std::uint64_t>(N), opts.ceiling);
    if (!space) ceiling_exceeded();
    PolyScanKernel kernel{*F, q, N, event};
    Tally t = run_partitioned(
        *space, opts.threads, [&](std::uint64_t lo, std::uint64_t hi, Tally& tally) {
          std::vector<std::uint64_t> digits(static_cast<std::size_t>(N));
          std::uint64_t rest = lo;
          for (int i = 0; i < N; ++i) {
            digits[static_cast<std::size_t>(i)] = rest % count;
            rest /= count;
          }
          for (std::uint64_t idx = lo; idx < hi; ++idx) {
            if (kernel(digits.data())) ++tally.hits;
            for (int i = 0; i < N; ++i) {
              if (++digits[static_cast<std::size_t>(i)] < count) break;
              digits[static_cast<std::size_t>(i)] = 0;
            }
          }
        });
    DensityPoint point;
    point.cutoff = n;
    point.fraction = Rat(BigInt(t.hits), BigInt(*space));
    point.mode = CensusMode::exhaustive;
    point.aligned = is_power_of(count, q);
    scan.points.push_back(std::move(point));
  }
  return scan;
}

namespace {

// Tuple evaluation for the matrix scans: digits are m*m*N polynomial
// indices, blocks in order, each block row-major. Returns (left prime,
// every block nonsingular).
struct MatrixScanKernel {
  const FieldPtr& F;
  std::uint64_t q;
  int m, N;

  std::pair<bool, bool> operator()(const std::uint64_t* digits) const {
    if (m == 1) return eval_m1(digits);
    if (m == 2 && N == 2) return eval_m2n2(digits);
    return eval_generic(digits);
  }

  // m = 1: the chain's full-size minors are the products over all blocks
  // but one, built from prefix/suffix products.
  std::pair<bool, bool> eval_m1(const std::uint64_t* digits) const {
    std::vector<SP<256>> pre(static_cast<std::size_t>(N) + 1),
        suf(static_cast<std::size_t>(N) + 1);
    std::vector<SP<256>> d(static_cast<std::size_t>(N));
    bool nonsingular = true;
    for (int i = 0; i < N; ++i) {
      sp_from_index(d[static_cast<std::size_t>(i)], digits[i], q);
      nonsingular = nonsingular && d[static_cast<std::size_t>(i)].deg >= 0;
    }
    pre[0].deg = 0;
    pre[0].c[0] = 1;
    for (int i = 0; i < N; ++i)
      sp_mul(pre[static_cast<std::size_t>(i)], d[static_cast<std::size_t>(i)],
             pre[static_cast<std::size_t>(i) + 1], *F);
    suf[static_cast<std::size_t>(N)].deg = 0;
    suf[static_cast<std::size_t>(N)].c[0] = 1;
    for (int i = N - 1; i >= 0; --i)
      sp_mul(suf[static_cast<std::size_t>(i) + 1], d[static_cast<std::size_t>(i)],
             suf[static_cast<std::size_t>(i)], *F);
    SP<256> g[2];
    SP<256>* acc = nullptr;
    SP<256>* spare = &g[1];
    for (int c = 0; c < N; ++c) {
      SP<256> minor;
      sp_mul(pre[static_cast<std::size_t>(c)], suf[static_cast<std::size_t>(c) + 1], minor,
             *F);
      if (acc == nullptr) {
        sp_copy(g[0], minor);
        acc = &g[0];
        continue;
      }
      sp_copy(*spare, minor);
      SP<256>* r = sp_gcd(acc, spare, *F);
      spare = (r == acc) ? spare : acc;
      acc = r;
      if (acc->deg == 0) return {true, nonsingular};
    }
    return {acc != nullptr && acc->deg == 0, nonsingular};
  }

  // m = 2, N = 2: six 2x2 minors of [D1 D2], determinants first so the
  // common case (coprime determinants) exits after two minors.
  std::pair<bool, bool> eval_m2n2(const std::uint64_t* digits) const {
    SP<128> e[8];
    for (int i = 0; i < 8; ++i) sp_from_index(e[i], digits[i], q);
    // chain rows: [a1 b1 a2 b2; c1 d1 c2 d2] with blocks (a b; c d)
    const SP<128>* top[4] = {&e[0], &e[1], &e[4], &e[5]};
    const SP<128>* bot[4] = {&e[2], &e[3], &e[6], &e[7]};
    const auto minor = [&](int k, int l, SP<128>& out) {
      SP<128> t1, t2;
      sp_mul(*top[k], *bot[l], t1, *F);
      sp_mul(*top[l], *bot[k], t2, *F);
      sp_sub(t1, t2, out, *F);
    };
    SP<128> det1, det2;
    minor(0, 1, det1);
    minor(2, 3, det2);
    const bool nonsingular = det1.deg >= 0 && det2.deg >= 0;
    SP<128> g[2];
    sp_copy(g[0], det1);
    sp_copy(g[1], det2);
    SP<128>* acc = sp_gcd(&g[0], &g[1], *F);
    SP<128>* spare = (acc == &g[0]) ? &g[1] : &g[0];
    if (acc->deg == 0) return {true, nonsingular};
    static constexpr int kPairs[4][2] = {{0, 2}, {0, 3}, {1, 2}, {1, 3}};
    for (const auto& kl : kPairs) {
      minor(kl[0], kl[1], *spare);
      SP<128>* r = sp_gcd(acc, spare, *F);
      spare = (r == acc) ? spare : acc;
      acc = r;
      if (acc->deg == 0) return {true, nonsingular};
    }
    return {acc->deg == 0, nonsingular};
  }

  std::pair<bool, bool> eval_generic(const std::uint64_t* digits) const {
    std::vector<PolyMatrix> blocks;
    blocks.reserve(static_cast<std::size_t>(N));
    int e = 0;
    bool nonsingular = true;
    for (int b = 0; b < N; ++b) {
      PolyMatrix block(F, m, m);
      for (int r = 0; r < m; ++r)
        for (int c = 0; c < m; ++c) block.at(r, c) = index_to_poly(F, digits[e++]);
      nonsingular = nonsingular && !det_poly(block).is_zero();
      blocks.push_back(std::move(block));
    }
    return {is_left_prime(build_block_chain(blocks).assembled), nonsingular};
  }
};

}  // namespace

DensityScan density_scan_matrices(int m, int N, std::uint64_t q,
                                  const std::vector<std::uint64_t>& cutoffs,
                                  const CensusOptions& opts) {
  if (m < 1) throw std::domain_error("need m >= 1");
  if (N < 2) throw std::domain_error("need at least two blocks");
  if (!std::is_sorted(cutoffs.begin(), cutoffs.end()) ||
      std::adjacent_find(cutoffs.begin(), cutoffs.end()) != cutoffs.end())
    throw std::invalid_argument("cutoffs must be strictly increasing");
  FieldPtr F = field_of_order(q);
  const int cells = m * m * N;
  MatrixScanKernel kernel{F, q, m, N};

  DensityScan scan;
  scan.model = "left-prime block chain over matrix tuples with entries among "
               "the first n+1 polynomials";
  for (std::uint64_t n : cutoffs) {
    const std::uint64_t count = n + 1;
    DensityPoint point;
    point.cutoff = n;
    point.aligned = is_power_of(count, q);
    const auto space = pow_within(count, static_cast<std::uint64_t>(cells), opts.ceiling);
    if (space) {
      Tally t = run_partitioned(
          *space, opts.threads, [&](std::uint64_t lo, std::uint64_t hi, Tally& tally) {
            std::vector<std::uint64_t> digits(static_cast<std::size_t>(cells));
            std::uint64_t rest = lo;
            for (int i = 0; i < cells; ++i) {
              digits[static_cast<std::size_t>(i)] = rest % count;
              rest /= count;
            }
            for (std::uint64_t idx = lo; idx < hi; ++idx) {
              auto [hit, ns] = kernel(digits.data());
              tally.hits += hit ? 1 : 0;
              if (ns) {
                ++tally.nonsingular;
                tally.nonsingular_hits += hit ? 1 : 0;
              }
              for (int i = 0; i < cells; ++i) {
                if (++digits[static_cast<std::size_t>(i)] < count) break;
                digits[static_cast<std::size_t>(i)] = 0;
              }
            }
          });
      point.mode = CensusMode::exhaustive;
      point.fraction = Rat(BigInt(t.hits), BigInt(*space));
      if (t.nonsingular > 0)
        point.nonsingular_fraction = Rat(BigInt(t.nonsingular_hits), BigInt(t.nonsingular));
    } else {
      // Too large to enumerate: sample instead of failing.
      if (count > UINT32_MAX)
        throw std::domain_error("cutoff too large for the sampling kernel");
      if (opts.samples < 1) throw std::domain_error("need at least one sample");
      const CounterRng rng(opts.seed);
      Tally t = run_partitioned(
          opts.samples, opts.threads,
          [&](std::uint64_t lo, std::uint64_t hi, Tally& tally) {
            std::vector<std::uint64_t> digits(static_cast<std::size_t>(cells));
            for (std::uint64_t sample = lo; sample < hi; ++sample) {
              const std::uint64_t base = sample * static_cast<std::uint64_t>(cells);
              for (int i = 0; i < cells; ++i)
                digits[static_cast<std::size_t>(i)] =
                    rng.bounded(base + static_cast<std::uint64_t>(i),
                                static_cast<std::uint32_t>(count));
              auto [hit, ns] = kernel(digits.data());
              tally.hits += hit ? 1 : 0;
              if (ns) {
                ++tally.nonsingular;
                tally.nonsingular_hits += hit ? 1 : 0;
              }
            }
          });
      point.mode = CensusMode::montecarlo;
      point.fraction = Rat(BigInt(t.hits), BigInt(opts.samples));
      if (t.nonsingular > 0)
        point.nonsingular_fraction = Rat(BigInt(t.nonsingular_hits), BigInt(t.nonsingular));
      auto [lo, hi] = wilson_ci99(t.hits, opts.samples);
      point.ci_low = lo;
      point.ci_high = hi;
      scan.seed = opts.seed;
      scan.samples = opts.samples;
    }
    scan.points.push_back(std::move(point));
  }
  return scan;
}

// ---------------------------------------------------------------------------
// Confidence intervals
// ---------------------------------------------------------------------------

std::pair<Rat, Rat> wilson_ci99(std::uint64_t hits, std::uint64_t n) {
  if (n == 0) throw std::domain_error("interval needs at least one trial");
  if (hits > n) throw std::invalid_argument("more hits than trials");
  const double z = 2.5758293035489004;  // two-sided 99% normal quantile
  const double nn = static_cast<double>(n);
  const double ph = static_cast<double>(hits) / nn;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nn;
  const double center = ph + z2 / (2.0 * nn);
  const double radius = z * std::sqrt(ph * (1.0 - ph) / nn + z2 / (4.0 * nn * nn));
  const double lo = (center - radius) / denom;
  const double hi = (center + radius) / denom;
  // Snap outward to a 10^-12 grid (one extra tick absorbs double rounding),
  // then clamp into [0,1]; the interval can only widen here.
  const std::int64_t grid = 1000000000000ll;
  std::int64_t lo_ticks = static_cast<std::int64_t>(std::floor(lo * 1e12)) - 1;
  std::int64_t hi_ticks = static_cast<std::int64_t>(std::ceil(hi * 1e12)) + 1;
  lo_ticks = std::clamp<std::int64_t>(lo_ticks, 0, grid);
  hi_ticks = std::clamp<std::int64_t>(hi_ticks, 0, grid);
  return {Rat(lo_ticks, grid), Rat(hi_ticks, grid)};
}

}  // namespace coprime
