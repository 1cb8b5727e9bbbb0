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

#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "sonsim/baseline.hpp"
#include "sonsim/config.hpp"
#include "sonsim/ksp.hpp"
#include "sonsim/network.hpp"

namespace sonsim {

enum class Strategy { kBaseline, kKsp };

std::string to_string(Strategy s);  // "baseline" / "ksp"

// Critical-path time of the forwarding tree: work at a node is summed,
// parallel branches contribute their maximum.
double response_time(const RoutingResult& result, const CostModel& model);

struct Score {
  double precision = 1.0;
  double recall = 1.0;
  bool precision_defined = true;  // false when nothing was retrieved
  bool recall_defined = true;     // false when nothing is relevant
};

// `oracle` must be sorted.
Score score(const std::set<PeerId>& retrieved, const std::vector<PeerId>& oracle);

// Fraction of contacted super-peers with at least one relevant member.
double sp_precision(const Network& net, const RoutingResult& result,
                    const std::vector<PeerId>& oracle);

struct QueryMetrics {
  Strategy strategy = Strategy::kBaseline;
  std::uint64_t query_id = 0;
  double response_time = 0.0;
  double precision = 1.0;
  double recall = 1.0;
  double sp_precision = 1.0;
  std::uint64_t mapping_ops = 0;
  std::uint64_t hops = 0;
  std::uint64_t tree_visits = 0;
  bool precision_defined = true;
  bool recall_defined = true;
};

QueryMetrics measure(const Network& net, const Query& q, const RoutingResult& result,
                     Strategy strategy, const Config& config);

struct StrategySummary {
  Strategy strategy = Strategy::kBaseline;
  std::size_t queries = 0;
  double mean_response_time = 0.0;
  double mean_precision = 0.0;
  double mean_recall = 0.0;
  double mean_sp_precision = 0.0;
  std::uint64_t total_mapping_ops = 0;
  std::uint64_t total_hops = 0;
  std::uint64_t total_tree_visits = 0;
};

StrategySummary summarize(Strategy strategy, const std::vector<QueryMetrics>& rows);

struct ExperimentOptions {
  bool report_baseline = true;
  bool report_ksp = true;
  // Replay mode only: a previously recorded log whose queries are replayed
  // and which serves as the training set.
  std::optional<QueryLog> prior_log;
};

struct ExperimentReport {
  Config config;
  std::vector<QueryMetrics> baseline;
  std::vector<QueryMetrics> ksp;
  std::vector<StrategySummary> summaries;
  QueryLog training_log;  // the baseline-era log the indices learn from
  QueryLog ksp_log;       // records produced by knowledge-based routing
  std::optional<KspOverlay> overlay;
  IndexAccuracy index_accuracy;
};

// Network, baseline epoch (which yields the training log), domain-groups
// and indices, then a knowledge-based epoch on a fresh or replayed
// workload. Fully determined by the config.
ExperimentReport run_experiment(const Config& config, const ExperimentOptions& options = {});

struct NetworkSize {
  std::uint32_t np = 0;
  std::uint32_t nsp = 0;

  friend auto operator<=>(const NetworkSize&, const NetworkSize&) = default;
};

// Seed of a sweep point: derive_seed(base seed, "sweep:<np>x<nsp>").
std::uint64_t sweep_seed(std::uint64_t base_seed, NetworkSize size);

// One experiment per size, sizes must be distinct. Points are independent
// and run on up to `jobs` threads; results keep the order of `sizes`.
std::vector<ExperimentReport> sweep(const Config& base, const std::vector<NetworkSize>& sizes,
                                    unsigned jobs = 1);

// The sizes of the reference scalability run, 300 to 5000 peers.
std::vector<NetworkSize> default_sweep_sizes();

std::string per_query_csv(const ExperimentReport& report);
std::string summary_csv(const ExperimentReport& report);
std::string sweep_csv(const std::vector<ExperimentReport>& reports);

}  // namespace sonsim
