// Throughput probes for the hot paths: tree enumeration, the exact solvers,
// the stability margin, closure construction and STP serialization.

#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

#include "steiner/exact.hpp"
#include "steiner/generate.hpp"
#include "steiner/solvers.hpp"
#include "steiner/stability.hpp"
#include "steiner/stp.hpp"
#include "steiner/tree.hpp"

using namespace steiner;

namespace {

Instance random_metric_instance(std::size_t n, std::size_t t, std::uint64_t seed) {
  GenSpec spec;
  spec.model = GenModel::kRandomMetric;
  spec.n = n;
  spec.t = t;
  spec.seed = seed;
  return random_metric(spec);
}

Instance spoke_star(std::size_t spokes, double pairwise = 1.99) {
  const std::size_t n = spokes + 1;
  std::vector<double> w(n * n, pairwise);
  for (std::size_t i = 0; i < n; ++i) w[i * n + i] = 0.0;
  for (std::size_t i = 0; i < spokes; ++i) {
    w[i * n + spokes] = 1.0;
    w[spokes * n + i] = 1.0;
  }
  std::vector<VertexId> terms;
  for (std::size_t i = 0; i < spokes; ++i) terms.push_back(static_cast<VertexId>(i));
  return Instance(static_cast<VertexId>(n), terms, w, true, false);
}

void bm_enumerate(benchmark::State& state) {
  Instance inst = random_metric_instance(std::size_t(state.range(0)), 3, 17);
  std::uint64_t trees = 0;
  for (auto _ : state) {
    EnumerationStats stats = enumerate_canonical_trees(inst, {}, [](const SteinerTree&) {
      return true;
    });
    trees += stats.trees_visited;
    benchmark::DoNotOptimize(stats);
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(trees));
}
BENCHMARK(bm_enumerate)->Arg(6)->Arg(7)->Arg(8)->Unit(benchmark::kMillisecond);

void bm_brute_force(benchmark::State& state) {
  Instance inst = random_metric_instance(std::size_t(state.range(0)), 4, 23);
  for (auto _ : state) {
    OptResult r = brute_force_opt(inst);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(bm_brute_force)->Arg(6)->Arg(7)->Arg(8)->Unit(benchmark::kMillisecond);

void bm_dreyfus_wagner(benchmark::State& state) {
  Instance inst = spoke_star(std::size_t(state.range(0)));
  for (auto _ : state) {
    DwResult r = dreyfus_wagner(inst);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(bm_dreyfus_wagner)->Arg(8)->Arg(10)->Arg(12)->Unit(benchmark::kMillisecond);

void bm_gamma_star(benchmark::State& state) {
  Instance inst = random_metric_instance(std::size_t(state.range(0)), 3, 31);
  for (auto _ : state) {
    StabilityReport r = gamma_star(inst);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(bm_gamma_star)->Arg(6)->Arg(7)->Arg(8)->Unit(benchmark::kMillisecond);

void bm_metric_closure(benchmark::State& state) {
  const std::size_t n = std::size_t(state.range(0));
  GenSpec spec;
  spec.model = GenModel::kRandomMetric;
  spec.n = n;
  spec.t = 3;
  spec.seed = 47;
  Instance base = random_metric(spec);
  std::vector<WeightedEdge> edges;
  for (VertexId u = 0; u < base.size(); ++u)
    for (VertexId v = u + 1; v < base.size(); ++v)
      edges.push_back(WeightedEdge{u, v, base.weight(u, v)});
  for (auto _ : state) {
    Instance closed = metric_closure(n, {0, 1, 2}, edges);
    benchmark::DoNotOptimize(closed);
  }
}
BENCHMARK(bm_metric_closure)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMicrosecond);

void bm_mst_terminals(benchmark::State& state) {
  Instance inst = random_metric_instance(std::size_t(state.range(0)),
                                         std::size_t(state.range(0)) / 2, 53);
  for (auto _ : state) {
    SteinerTree t = mst_terminals(inst);
    benchmark::DoNotOptimize(t);
  }
}
BENCHMARK(bm_mst_terminals)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMicrosecond);

void bm_contract_solve(benchmark::State& state) {
  Instance inst = spoke_star(7);
  for (auto _ : state) {
    ContractResult r = contract_solve(inst, 1.6, exact_oracle(), 2, false);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(bm_contract_solve)->Unit(benchmark::kMillisecond);

void bm_stp_roundtrip(benchmark::State& state) {
  GenSpec spec;
  spec.model = GenModel::kEuclidean;
  spec.dim = 3;
  spec.n = std::size_t(state.range(0));
  spec.t = 4;
  spec.seed = 59;
  Instance inst = random_euclidean(spec);
  for (auto _ : state) {
    ParsedStp parsed = parse_stp(write_stp(inst));
    benchmark::DoNotOptimize(parsed);
  }
}
BENCHMARK(bm_stp_roundtrip)->Arg(16)->Arg(32)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
