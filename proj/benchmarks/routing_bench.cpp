// Copyright 2026 The sonsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <vector>

#include <benchmark/benchmark.h>

#include "sonsim/baseline.hpp"
#include "sonsim/dtree.hpp"
#include "sonsim/ksp.hpp"
#include "sonsim/network.hpp"
#include "sonsim/rng.hpp"

namespace sonsim {
namespace {

struct World {
  Network net;
  std::vector<Query> workload;
  QueryLog log;
  KspOverlay overlay;

  explicit World(std::uint32_t np, std::uint32_t nsp) {
    Config c;
    c.np = np;
    c.nsp = nsp;
    net = build_son(c);
    Rng rng(derive_seed(c.seed, "workload-baseline"));
    workload = generate_workload(net, c.queries_per_peer, c.n_components, rng);
    log = run_baseline_epoch(net, workload, c.eps_acc, c.max_hops).log;
    overlay = form_groups(net, c.tau_trust);
    train_indices(overlay, log, c.min_leaf);
  }
};

const World& world(std::int64_t np) {
  static const World small(1000, 20);
  static const World large(5000, 54);
  return np <= 1000 ? small : large;
}

void BM_RouteBaseline(benchmark::State& state) {
  const auto& w = world(state.range(0));
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& q = w.workload[i++ % w.workload.size()];
    benchmark::DoNotOptimize(
        route_baseline(w.net, q, w.net.peer(q.origin_peer).super_peer, 0.5, 1));
  }
}
BENCHMARK(BM_RouteBaseline)->Arg(1000)->Arg(5000);

void BM_RouteKnowledge(benchmark::State& state) {
  const auto& w = world(state.range(0));
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& q = w.workload[i++ % w.workload.size()];
    benchmark::DoNotOptimize(
        route_kb(w.net, w.overlay, q, w.net.peer(q.origin_peer).super_peer, 0.5));
  }
}
BENCHMARK(BM_RouteKnowledge)->Arg(1000)->Arg(5000);

void BM_Oracle(benchmark::State& state) {
  const auto& w = world(state.range(0));
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(oracle_relevant_peers(w.net, w.workload[i++ % w.workload.size()], 0.5));
  }
}
BENCHMARK(BM_Oracle)->Arg(1000)->Arg(5000);

void BM_BuildTree(benchmark::State& state) {
  auto rows = instances_from_log(world(state.range(0)).log);
  for (auto _ : state) benchmark::DoNotOptimize(build_tree(rows, 2));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(rows.size()));
}
BENCHMARK(BM_BuildTree)->Arg(1000)->Arg(5000)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace sonsim

BENCHMARK_MAIN();
