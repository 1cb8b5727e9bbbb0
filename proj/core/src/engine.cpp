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

#include "sonsim/engine.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include <fmt/format.h>

#include "sonsim/error.hpp"
#include "sonsim/rng.hpp"

namespace sonsim {

namespace {

double critical_path(const RouteStep& step, const CostModel& m) {
  double branches = 0.0;
  for (const auto& child : step.next) branches = std::max(branches, critical_path(child, m));
  return static_cast<double>(step.hops) * m.c_hop +
         static_cast<double>(step.mapping_ops) * m.c_map +
         static_cast<double>(step.tree_visits) * m.c_tree + branches;
}

std::vector<Query> queries_from_log(const Network& net, const QueryLog& log) {
  std::vector<Query> out;
  out.reserve(log.size());
  for (const auto& r : log.records()) {
    net.peer(r.origin_peer);
    out.push_back(Query{r.query_id, r.origin_peer, r.components});
  }
  return out;
}

std::vector<QueryMetrics> measure_all(const Network& net, const std::vector<Query>& workload,
                                      const std::vector<RoutingResult>& results,
                                      Strategy strategy, const Config& config) {
  std::vector<QueryMetrics> out;
  out.reserve(workload.size());
  for (std::size_t i = 0; i < workload.size(); ++i) {
    out.push_back(measure(net, workload[i], results[i], strategy, config));
  }
  return out;
}

}  // namespace

std::string to_string(Strategy s) { return s == Strategy::kBaseline ? "baseline" : "ksp"; }

double response_time(const RoutingResult& result, const CostModel& model) {
  return critical_path(result.trace, model);
}

Score score(const std::set<PeerId>& retrieved, const std::vector<PeerId>& oracle) {
  std::size_t hits = 0;
  for (auto p : retrieved) {
    if (std::binary_search(oracle.begin(), oracle.end(), p)) ++hits;
  }
  Score s;
  if (retrieved.empty()) {
    s.precision_defined = false;
  } else {
    s.precision = static_cast<double>(hits) / static_cast<double>(retrieved.size());
  }
  if (oracle.empty()) {
    s.recall_defined = false;
  } else {
    s.recall = static_cast<double>(hits) / static_cast<double>(oracle.size());
  }
  return s;
}

double sp_precision(const Network& net, const RoutingResult& result,
                    const std::vector<PeerId>& oracle) {
  if (result.contacted_sps.empty()) return 1.0;
  std::set<SuperPeerId> useful;
  for (auto p : oracle) useful.insert(net.peer(p).super_peer);
  std::size_t good = 0;
  for (auto sp : result.contacted_sps) {
    if (useful.count(sp)) ++good;
  }
  return static_cast<double>(good) / static_cast<double>(result.contacted_sps.size());
}

QueryMetrics measure(const Network& net, const Query& q, const RoutingResult& result,
                     Strategy strategy, const Config& config) {
  auto oracle = oracle_relevant_peers(net, q, config.eps_acc);
  auto s = score(result.answering_peers, oracle);
  QueryMetrics m;
  m.strategy = strategy;
  m.query_id = q.id;
  m.response_time = response_time(result, config.costs);
  m.precision = s.precision;
  m.recall = s.recall;
  m.precision_defined = s.precision_defined;
  m.recall_defined = s.recall_defined;
  m.sp_precision = sp_precision(net, result, oracle);
  m.mapping_ops = result.mapping_ops;
  m.hops = result.hops;
  m.tree_visits = result.tree_visits;
  return m;
}

StrategySummary summarize(Strategy strategy, const std::vector<QueryMetrics>& rows) {
  StrategySummary s;
  s.strategy = strategy;
  s.queries = rows.size();
  for (const auto& r : rows) {
    s.mean_response_time += r.response_time;
    s.mean_precision += r.precision;
    s.mean_recall += r.recall;
    s.mean_sp_precision += r.sp_precision;
    s.total_mapping_ops += r.mapping_ops;
    s.total_hops += r.hops;
    s.total_tree_visits += r.tree_visits;
  }
  if (!rows.empty()) {
    const auto n = static_cast<double>(rows.size());
    s.mean_response_time /= n;
    s.mean_precision /= n;
    s.mean_recall /= n;
    s.mean_sp_precision /= n;
  }
  return s;
}

ExperimentReport run_experiment(const Config& config, const ExperimentOptions& options) {
  config.validate();
  const bool replay = config.workload_mode == WorkloadMode::kReplay;
  if (options.prior_log && !replay) {
    throw Error("a prior log can only be replayed in replay mode");
  }
  if (replay && options.report_ksp && !options.report_baseline && !options.prior_log) {
    throw Error("replay mode needs a prior query log for the ksp strategy");
  }

  ExperimentReport report;
  report.config = config;
  const auto net = build_son(config);

  std::vector<Query> workload;
  if (options.prior_log) {
    if (options.prior_log->empty()) throw Error("the prior query log is empty");
    if (options.prior_log->records().front().components.size() != config.n_components) {
      throw Error("the prior query log does not match n_components");
    }
    workload = queries_from_log(net, *options.prior_log);
  } else {
    Rng rng(derive_seed(config.seed, "workload-baseline"));
    workload = generate_workload(net, config.queries_per_peer, config.n_components, rng);
  }
  if (workload.empty()) throw Error("the workload is empty (queries_per_peer = 0?)");

  auto epoch = run_baseline_epoch(net, workload, config.eps_acc, config.max_hops);
  report.training_log = options.prior_log ? *options.prior_log : epoch.log;
  if (options.report_baseline) {
    report.baseline = measure_all(net, workload, epoch.results, Strategy::kBaseline, config);
    report.summaries.push_back(summarize(Strategy::kBaseline, report.baseline));
  }
  if (!options.report_ksp) return report;

  report.index_accuracy = evaluate_index(report.training_log, config.min_leaf);

  auto overlay = form_groups(net, config.tau_trust);
  train_indices(overlay, report.training_log, config.min_leaf);

  std::uint64_t next_id = 0;
  for (const auto& r : report.training_log.records()) next_id = std::max(next_id, r.query_id + 1);

  std::vector<Query> kb_workload;
  if (replay) {
    kb_workload = workload;
    for (auto& q : kb_workload) q.id += next_id;
  } else {
    Rng rng(derive_seed(config.seed, "workload-kb"));
    kb_workload = generate_workload(net, config.queries_per_peer, config.n_components, rng,
                                    next_id);
  }

  QueryLog cumulative = report.training_log;
  std::vector<RoutingResult> kb_results;
  kb_results.reserve(kb_workload.size());
  for (const auto& q : kb_workload) {
    auto sp = net.peer(q.origin_peer).super_peer;
    auto result = route_kb(net, overlay, q, sp, config.eps_acc);
    auto record = make_log_record(net, q, result);
    report.ksp_log.append(record);
    kb_results.push_back(std::move(result));
    if (config.refresh_every > 0) {
      cumulative.append(std::move(record));
      refresh_knowledge(overlay, cumulative, config.refresh_every, kb_results.size(),
                        config.min_leaf);
    }
  }

  report.ksp = measure_all(net, kb_workload, kb_results, Strategy::kKsp, config);
  report.summaries.push_back(summarize(Strategy::kKsp, report.ksp));
  report.overlay = std::move(overlay);
  return report;
}

std::uint64_t sweep_seed(std::uint64_t base_seed, NetworkSize size) {
  return derive_seed(base_seed, fmt::format("sweep:{}x{}", size.np, size.nsp));
}

std::vector<ExperimentReport> sweep(const Config& base, const std::vector<NetworkSize>& sizes,
                                    unsigned jobs) {
  if (sizes.empty()) throw Error("sweep needs at least one network size");
  auto sorted = sizes;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw Error("sweep sizes must be distinct");
  }

  std::vector<Config> configs;
  for (auto size : sizes) {
    Config c = base;
    c.np = size.np;
    c.nsp = size.nsp;
    c.seed = sweep_seed(base.seed, size);
    c.validate();
    configs.push_back(c);
  }

  std::vector<std::optional<ExperimentReport>> slots(configs.size());
  std::vector<std::exception_ptr> errors(configs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (auto i = next++; i < configs.size(); i = next++) {
      try {
        slots[i] = run_experiment(configs[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(configs.size())));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
  }

  std::vector<ExperimentReport> out;
  for (std::size_t i = 0; i < configs.size(); ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    out.push_back(std::move(*slots[i]));
  }
  return out;
}

std::vector<NetworkSize> default_sweep_sizes() {
  return {{300, 10},   {600, 12},   {900, 14},   {1200, 16},  {1500, 20},
          {2000, 24},  {2500, 30},  {3000, 36},  {4000, 44},  {5000, 54}};
}

std::string per_query_csv(const ExperimentReport& report) {
  std::string out =
      "strategy,query_id,response_time,precision,recall,sp_precision,mapping_ops,hops,"
      "tree_visits\n";
  for (const auto* rows : {&report.baseline, &report.ksp}) {
    for (const auto& m : *rows) {
      out += fmt::format("{},{},{:.6f},{:.6f},{:.6f},{:.6f},{},{},{}\n", to_string(m.strategy),
                         m.query_id, m.response_time, m.precision, m.recall, m.sp_precision,
                         m.mapping_ops, m.hops, m.tree_visits);
    }
  }
  return out;
}

namespace {

std::string summary_row(const StrategySummary& s) {
  return fmt::format("{},{},{:.6f},{:.6f},{:.6f},{:.6f},{},{},{}", to_string(s.strategy),
                     s.queries, s.mean_response_time, s.mean_precision, s.mean_recall,
                     s.mean_sp_precision, s.total_mapping_ops, s.total_hops,
                     s.total_tree_visits);
}

constexpr const char* kSummaryColumns =
    "strategy,queries,mean_response_time,mean_precision,mean_recall,mean_sp_precision,"
    "total_mapping_ops,total_hops,total_tree_visits";

}  // namespace

std::string summary_csv(const ExperimentReport& report) {
  std::string out = std::string(kSummaryColumns) + "\n";
  for (const auto& s : report.summaries) out += summary_row(s) + "\n";
  return out;
}

std::string sweep_csv(const std::vector<ExperimentReport>& reports) {
  std::string out = fmt::format("np,nsp,seed,{}\n", kSummaryColumns);
  for (const auto& r : reports) {
    for (const auto& s : r.summaries) {
      out += fmt::format("{},{},{},{}\n", r.config.np, r.config.nsp, r.config.seed,
                         summary_row(s));
    }
  }
  return out;
}

}  // namespace sonsim
