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


// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. `sonsim_acceptance 3 6` runs only criteria 3 and 6.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <fmt/format.h>

#include "commands.hpp"
#include "fixtures.hpp"
#include "properties.hpp"
#include "sonsim/dtree.hpp"
#include "sonsim/engine.hpp"
#include "sonsim/error.hpp"
#include "sonsim/network.hpp"
#include "support.hpp"

namespace sonsim {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const StrategySummary& summary(const ExperimentReport& r, Strategy s) {
  for (const auto& x : r.summaries) {
    if (x.strategy == s) return x;
  }
  throw Error("missing summary for " + to_string(s));
}

// The 1000-peer run is shared by criteria 1 and 2.
const ExperimentReport& desk_run(double* elapsed = nullptr) {
  static double took = 0;
  static const ExperimentReport report = [] {
    Config c;
    c.np = 1000;
    c.nsp = 20;
    auto t0 = std::chrono::steady_clock::now();
    auto r = run_experiment(c);
    took = seconds_since(t0);
    return r;
  }();
  if (elapsed) *elapsed = took;
  return report;
}

Outcome response_time_gap() {
  double took = 0;
  const auto& r = desk_run(&took);
  auto b = summary(r, Strategy::kBaseline).mean_response_time;
  auto k = summary(r, Strategy::kKsp).mean_response_time;
  return {k <= 0.75 * b && took < 60.0,
          fmt::format("np=1000 nsp=20: ksp {:.3f} / baseline {:.3f} = {:.3f} (need <= 0.75), "
                      "{:.1f}s (need < 60s)",
                      k, b, k / b, took)};
}

Outcome recall_ordering() {
  const auto& r = desk_run();
  auto b = summary(r, Strategy::kBaseline).mean_recall;
  auto k = summary(r, Strategy::kKsp).mean_recall;
  return {k >= b - 0.01 && b >= 0.80 && k >= 0.80,
          fmt::format("np=1000 eps=0.5 max_hops=1: recall ksp {:.4f}, baseline {:.4f} "
                      "(need ksp >= baseline - 0.01, both >= 0.80)",
                      k, b)};
}

Outcome sp_precision_ordering() {
  auto r = run_experiment(Config{});
  auto b = summary(r, Strategy::kBaseline).mean_sp_precision;
  auto k = summary(r, Strategy::kKsp).mean_sp_precision;
  std::size_t imprecise = 0;
  for (const auto* rows : {&r.baseline, &r.ksp}) {
    for (const auto& q : *rows) imprecise += q.precision != 1.0 ? 1 : 0;
  }
  return {k >= b && imprecise == 0,
          fmt::format("default scenario: sp_precision ksp {:.4f}, baseline {:.4f} "
                      "(need ksp >= baseline); {} of {} queries with peer precision != 1.0",
                      k, b, imprecise, r.baseline.size() + r.ksp.size())};
}

Outcome tree_accuracy() {
  auto t0 = std::chrono::steady_clock::now();
  ExperimentOptions only_baseline;
  only_baseline.report_ksp = false;
  const Config c;
  auto r = run_experiment(c, only_baseline);
  auto acc = evaluate_index(r.training_log, c.min_leaf);
  auto took = seconds_since(t0);
  return {acc.training >= 0.85 && took < 10.0,
          fmt::format("np=300: training accuracy {:.4f} over {} rows (need >= 0.85), "
                      "held-out {:.4f} over {} rows, {:.2f}s (need < 10s)",
                      acc.training, acc.training_rows, acc.held_out, acc.held_out_rows, took)};
}

Outcome oracle_equivalence() {
  std::size_t seeds = 0, queries = 0, mismatches = 0, skipped = 0;
  for (std::uint64_t seed = 1; seeds < 20; ++seed) {
    auto c = testing::small_config(seed, 100, 10);
    c.friends_per_sp = 2;
    c.eps_acc = 0.0;
    c.max_hops = kUnboundedHops;
    auto net = build_son(c);
    if (testing::friend_component(net, SuperPeerId{0}).size() != net.super_peers.size()) {
      ++skipped;
      continue;
    }
    ++seeds;
    Rng rng(derive_seed(seed, "workload-baseline"));
    for (const auto& q : generate_workload(net, 2, c.n_components, rng)) {
      auto sp = net.peer(q.origin_peer).super_peer;
      auto res = route_baseline(net, q, sp, c.eps_acc, c.max_hops);
      auto oracle = oracle_relevant_peers(net, q, c.eps_acc);
      std::set<PeerId> expected(oracle.begin(), oracle.end());
      ++queries;
      if (res.answering_peers != expected || score(res.answering_peers, oracle).recall != 1.0) {
        ++mismatches;
      }
    }
  }
  return {mismatches == 0 && seeds == 20,
          fmt::format("{} connected seeds at np=100 ({} disconnected skipped), {} queries, "
                      "{} differ from the oracle",
                      seeds, skipped, queries, mismatches)};
}

Outcome tree_fixtures() {
  const double h = entropy(ClassCounts{{SuperPeerId{0}, 9}, {SuperPeerId{1}, 5}});
  auto rows = testing::weather_instances();
  double best = 0;
  for (std::size_t a = 0; a < 4; ++a) best = std::max(best, information_gain(rows, a));
  const bool render_ok = render_tree(testing::published_index_tree()) ==
                         testing::kPublishedIndexText;
  auto small = DecisionTree::internal(
      0, {{SuperPeerId{0}, 15}, {SuperPeerId{3}, 11}},
      {{parse_element("p.i"), DecisionTree::leaf({{SuperPeerId{0}, 15}, {SuperPeerId{3}, 11}}, 4)}},
      4);
  const bool small_ok = render_tree(small) == "composanteW1 = p.i: SP0 (26.0/11.0)\n";
  return {std::abs(h - 0.9403) <= 1e-4 && std::abs(best - 0.247) <= 1e-3 && render_ok && small_ok,
          fmt::format("entropy(9,5) = {:.5f}, best gain = {:.5f}, rendered trees {}", h, best,
                      render_ok && small_ok ? "byte-exact" : "differ")};
}

std::map<std::string, std::size_t> hash_tree(const fs::path& dir) {
  std::map<std::string, std::size_t> out;
  for (const auto& e : fs::directory_iterator(dir)) {
    std::ifstream in(e.path(), std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    out[e.path().filename().string()] = std::hash<std::string>{}(ss.str());
  }
  return out;
}

Outcome determinism() {
  auto root = fs::temp_directory_path() / "sonsim_acceptance_determinism";
  fs::remove_all(root);
  std::vector<std::map<std::string, std::size_t>> hashes;
  for (const char* run : {"a", "b"}) {
    std::ostringstream out, err;
    auto dir = (root / run).string();
    if (cli::run({"run", "--strategy", "both", "--out-dir", dir}, out, err) != 0) {
      return {false, "cmd run failed: " + err.str()};
    }
    hashes.push_back(hash_tree(root / run));
  }
  std::size_t arff = 0, trees = 0;
  for (const auto& [name, h] : hashes[0]) {
    arff += name.ends_with(".arff");
    trees += name.ends_with(".tree.txt");
  }
  fs::remove_all(root);
  return {hashes[0] == hashes[1] && arff > 0 && trees > 0,
          fmt::format("{} files ({} ARFF, {} trees) hashed over two runs: {}", hashes[0].size(),
                      arff, trees, hashes[0] == hashes[1] ? "identical" : "different")};
}

Outcome property_suites() {
  struct Suite {
    const char* name;
    testing::PropertyResult result;
  };
  std::size_t connected = 0;
  std::vector<Suite> suites{
      {"capacity monotonicity", testing::capacity_monotonicity(500, 11)},
      {"flood completeness", testing::flood_completeness(150, 12, &connected)},
      {"hop monotonicity", testing::hop_monotonicity(150, 13)},
      {"group partition", testing::group_partition(150, 14)},
      {"ARFF round trip", testing::arff_round_trip(200, 15)},
      {"zero SP-level mapping", testing::zero_sp_mapping(200, 16)},
  };
  bool pass = connected > 0;
  std::string detail;
  for (const auto& s : suites) {
    pass = pass && s.result.ok(100);
    if (!detail.empty()) detail += "; ";
    detail += fmt::format("{} {}/{}", s.name, s.result.cases - s.result.failures, s.result.cases);
    if (s.result.failures) detail += " [" + s.result.first_failure + "]";
  }
  return {pass, detail};
}

Outcome scalability() {
  auto t0 = std::chrono::steady_clock::now();
  auto reports = sweep(Config{}, default_sweep_sizes(),
                       std::max(1u, std::thread::hardware_concurrency()));
  auto took = seconds_since(t0);
  bool monotone = true;
  for (std::size_t i = 1; i < reports.size(); ++i) {
    monotone = monotone && summary(reports[i], Strategy::kBaseline).total_mapping_ops >
                               summary(reports[i - 1], Strategy::kBaseline).total_mapping_ops;
  }
  const auto& last = reports.back();
  return {monotone && took < 600.0 && last.config.np == 5000,
          fmt::format("{} sizes up to np={} nsp={} in {:.1f}s (need < 600s); baseline "
                      "mapping_ops {}",
                      reports.size(), last.config.np, last.config.nsp, took,
                      monotone ? "strictly increasing" : "not monotone")};
}

struct Criterion {
  int number;
  const char* title;
  std::function<Outcome()> run;
};

}  // namespace
}  // namespace sonsim

int main(int argc, char** argv) {
  using namespace sonsim;
  const std::vector<Criterion> criteria{
      {1, "response-time gap", response_time_gap},
      {2, "recall ordering", recall_ordering},
      {3, "SP-level precision ordering", sp_precision_ordering},
      {4, "tree accuracy", tree_accuracy},
      {5, "oracle equivalence", oracle_equivalence},
      {6, "decision-tree fixtures", tree_fixtures},
      {7, "determinism", determinism},
      {8, "property suites", property_suites},
      {9, "scalability sweep", scalability},
  };
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));

  int failed = 0;
  for (const auto& c : criteria) {
    if (!only.empty() && !only.count(c.number)) continue;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += o.pass ? 0 : 1;
    std::cout << fmt::format("{} [{}] {}: {}\n", o.pass ? "PASS" : "FAIL", c.number, c.title,
                             o.detail)
              << std::flush;
  }
  std::cout << fmt::format("{} criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
