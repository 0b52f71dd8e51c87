#include <benchmark/benchmark.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <utility>
#include <vector>

#include "iposets/algebra.hpp"
#include "iposets/enumerate.hpp"
#include "iposets/forbidden.hpp"
#include "iposets/iposet.hpp"
#include "iposets/recognition.hpp"

namespace {

using namespace iposets;

// Enumerated iposets of one size, relabelled away from canonical order so
// canonicalisation benchmarks do not start from their own fixed point.
const std::vector<Iposet>& shuffled_pool(int n) {
  static std::map<int, std::vector<Iposet>> cache;
  auto it = cache.find(n);
  if (it == cache.end()) {
    std::mt19937 rng(static_cast<unsigned>(0x9e3779b9u + n));
    std::vector<Iposet> pool;
    for (const Iposet& p : enumerate_iposets(n)) {
      std::vector<int> perm(static_cast<std::size_t>(p.size()));
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      pool.push_back(p.relabel(perm));
    }
    it = cache.emplace(n, std::move(pool)).first;
  }
  return it->second;
}

const std::vector<std::pair<Iposet, Iposet>>& composable_pairs(int n) {
  static std::map<int, std::vector<std::pair<Iposet, Iposet>>> cache;
  auto it = cache.find(n);
  if (it == cache.end()) {
    std::vector<std::pair<Iposet, Iposet>> pairs;
    const std::vector<Iposet> pool = enumerate_iposets(n);
    for (const Iposet& a : pool) {
      for (const Iposet& b : pool) {
        if (a.cod() == b.dom()) {
          pairs.emplace_back(a, b);
        }
      }
    }
    it = cache.emplace(n, std::move(pairs)).first;
  }
  return it->second;
}

void BM_CanonicalForm(benchmark::State& state) {
  const std::vector<Iposet>& pool = shuffled_pool(static_cast<int>(state.range(0)));
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(canonical_form(pool[i]));
    i = (i + 1) % pool.size();
  }
}
BENCHMARK(BM_CanonicalForm)->Arg(4)->Arg(5)->Arg(6);

void BM_Glue(benchmark::State& state) {
  const auto& pairs = composable_pairs(static_cast<int>(state.range(0)));
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(glue(pairs[i].first, pairs[i].second));
    i = (i + 1) % pairs.size();
  }
}
BENCHMARK(BM_Glue)->Arg(4)->Arg(5);

void BM_Par(benchmark::State& state) {
  const std::vector<Iposet>& pool = shuffled_pool(static_cast<int>(state.range(0)));
  std::size_t i = 0;
  std::size_t j = pool.size() / 2;
  for (auto _ : state) {
    benchmark::DoNotOptimize(par(pool[i], pool[j]));
    i = (i + 1) % pool.size();
    j = (j + 1) % pool.size();
  }
}
BENCHMARK(BM_Par)->Arg(4)->Arg(5);

void BM_Subsumes(benchmark::State& state) {
  const std::vector<Iposet>& pool = shuffled_pool(static_cast<int>(state.range(0)));
  std::size_t i = 0;
  std::size_t j = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(subsumes(pool[i], pool[j]));
    i = (i + 1) % pool.size();
    j = (j + 3) % pool.size();
  }
}
BENCHMARK(BM_Subsumes)->Arg(4)->Arg(5);

void BM_EnumeratePosets(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(enumerate_posets(n));
  }
}
BENCHMARK(BM_EnumeratePosets)->Arg(5)->Arg(6)->Arg(7)
    ->Unit(benchmark::kMillisecond);

void BM_EnumerateIposets(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(enumerate_iposets(n));
  }
}
BENCHMARK(BM_EnumerateIposets)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

// One iteration filters every poset of the given size through is_gp, the
// inner loop of the census; the decomposition memo stays warm across
// iterations, as it does inside run_census.
void BM_GpFilterPosets(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const std::vector<Iposet> pool = enumerate_posets(n);
  for (auto _ : state) {
    int hits = 0;
    for (const Iposet& p : pool) {
      hits += is_gp(p) ? 1 : 0;
    }
    benchmark::DoNotOptimize(hits);
  }
}
BENCHMARK(BM_GpFilterPosets)->Arg(5)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_IntervalFilterPosets(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const std::vector<Iposet> pool = enumerate_posets(n);
  for (auto _ : state) {
    int hits = 0;
    for (const Iposet& p : pool) {
      hits += is_interval_order(p) ? 1 : 0;
    }
    benchmark::DoNotOptimize(hits);
  }
}
BENCHMARK(BM_IntervalFilterPosets)->Arg(6)->Arg(7)
    ->Unit(benchmark::kMillisecond);

void BM_MinimalForbidden(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(minimal_forbidden(n));
  }
}
BENCHMARK(BM_MinimalForbidden)->Arg(6)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
