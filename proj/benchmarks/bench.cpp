// Microbenchmarks for the hot kernels: field arithmetic, polynomial gcd,
// the constant-matrix rank check inside the W_j census, and one density-scan
// grid point. Run with --benchmark_min_time=... to tighten confidence.
#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

#include "coprime/census.hpp"
#include "coprime/gf.hpp"
#include "coprime/poly.hpp"
#include "coprime/polymatrix.hpp"
#include "coprime/rng.hpp"

using namespace coprime;

static void BM_field_mul(benchmark::State& state) {
  FieldPtr f = field_of_order(static_cast<std::uint64_t>(state.range(0)));
  const std::uint32_t n = static_cast<std::uint32_t>(f->order());
  std::uint32_t a = 1, b = n - 1;
  for (auto _ : state) {
    a = f->mul(a, b);
    b = f->add(b, 1);
    if (b == 0) b = 1;
    benchmark::DoNotOptimize(a);
  }
}
BENCHMARK(BM_field_mul)->Arg(2)->Arg(9)->Arg(256);

static void BM_poly_gcd(benchmark::State& state) {
  FieldPtr f = field_of_order(2);
  const int deg = static_cast<int>(state.range(0));
  CounterRng rng(17);
  std::uint64_t ctr = 0;
  std::vector<Poly> pool;
  const std::uint32_t bound = static_cast<std::uint32_t>(1) << deg;
  for (int i = 0; i < 64; ++i) {
    // monic of exact degree `deg`: index in [2^deg, 2^(deg+1))
    pool.push_back(index_to_poly(f, bound + rng.bounded(ctr++, bound)));
  }
  std::size_t i = 0;
  for (auto _ : state) {
    const Poly& a = pool[i % pool.size()];
    const Poly& b = pool[(i + 1) % pool.size()];
    benchmark::DoNotOptimize(gcd_monic(a, b));
    ++i;
  }
}
BENCHMARK(BM_poly_gcd)->Arg(8)->Arg(16);

static void BM_chain_rank(benchmark::State& state) {
  // The W_j inner loop: build the (N-1)m x Nm block chain from constant
  // blocks and row-reduce it.
  FieldPtr f = field_of_order(4);
  const int m = 2, N = 3;
  CounterRng rng(23);
  std::uint64_t ctr = 0;
  std::vector<ConstMatrix> blocks;
  for (int b = 0; b < N; ++b) {
    ConstMatrix k(f, m, m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) k.set(i, j, rng.bounded(ctr++, 4));
    blocks.push_back(k);
  }
  for (auto _ : state) {
    ConstMatrix chain(f, (N - 1) * m, N * m);
    for (int b = 0; b < N; ++b)
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
          if (b < N - 1) chain.set(b * m + i, b * m + j, blocks[b].at(i, j));
          if (b > 0) chain.set((b - 1) * m + i, b * m + j, blocks[b].at(i, j));
        }
    benchmark::DoNotOptimize(const_rank(chain));
  }
}
BENCHMARK(BM_chain_rank);

static void BM_density_point(benchmark::State& state) {
  const std::uint64_t cutoff = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    DensityScan scan =
        density_scan_polys(2, 2, {cutoff}, DensityEvent::pairwise_coprime);
    benchmark::DoNotOptimize(scan.points.front().fraction);
  }
}
BENCHMARK(BM_density_point)->Arg(15)->Arg(63)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
