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

#include "sonsim/ksp.hpp"

#include <numeric>

#include "sonsim/error.hpp"

namespace sonsim {

namespace {

std::vector<Instance> instances_from_records(const std::vector<const LogRecord*>& records) {
  std::vector<Instance> out;
  for (const auto* r : records) {
    for (auto sp : r->answering_sps) out.push_back(Instance{r->components, sp});
  }
  return out;
}

}  // namespace

const KspGroup& KspOverlay::group_of(SuperPeerId sp) const {
  auto it = sp_to_group.find(sp);
  if (it == sp_to_group.end()) throw Error(to_string(sp) + " belongs to no domain-group");
  return groups.at(it->second.value);
}

KspOverlay form_groups(const Network& net, std::uint32_t tau_trust) {
  std::vector<SuperPeerId> ids;
  for (const auto& [id, sp] : net.super_peers) ids.push_back(id);

  std::vector<std::size_t> parent(ids.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&parent](std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (std::size_t i = 0; i < ids.size(); ++i) {
    for (std::size_t j = i + 1; j < ids.size(); ++j) {
      if (trust(net, ids[i], ids[j]) >= tau_trust) {
        auto a = find(i);
        auto b = find(j);
        // Keep the smaller index as root so roots are first members.
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
    }
  }

  KspOverlay overlay;
  std::map<std::size_t, KspId> root_to_group;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    auto root = find(i);
    auto [it, inserted] =
        root_to_group.emplace(root, KspId{static_cast<std::uint32_t>(overlay.groups.size())});
    if (inserted) overlay.groups.emplace_back().id = it->second;
    overlay.groups[it->second.value].members.insert(ids[i]);
    overlay.sp_to_group[ids[i]] = it->second;
  }
  return overlay;
}

std::vector<Instance> instances_from_log(const QueryLog& log) {
  std::vector<const LogRecord*> all;
  for (const auto& r : log.records()) all.push_back(&r);
  return instances_from_records(all);
}

void train_indices(KspOverlay& overlay, const QueryLog& log, std::size_t min_leaf) {
  const auto everything = instances_from_log(log);
  ClassCounts global;
  for (const auto& inst : everything) ++global[inst.label];
  const std::size_t arity = log.empty() ? 0 : log.records().front().components.size();

  for (auto& group : overlay.groups) {
    QueryLog slice;
    std::vector<const LogRecord*> mine;
    for (const auto& r : log.records()) {
      if (group.members.count(r.origin_sp)) {
        slice.append(r);
        mine.push_back(&r);
      }
    }
    auto rows = instances_from_records(mine);
    if (!rows.empty()) {
      group.index = build_tree(rows, min_leaf);
    } else if (!global.empty()) {
      group.index = DecisionTree::leaf(global, arity);
    } else {
      group.index.reset();
    }
    group.log_slice = std::move(slice);
  }
}

RoutingResult route_kb(const Network& net, const KspOverlay& overlay, const Query& q,
                       SuperPeerId sp, double eps_acc) {
  net.super_peer(sp);  // throws on an unknown super-peer
  const auto& home = overlay.group_of(sp);
  if (!home.index) throw Error("index not trained");

  RoutingResult result;
  result.query_id = q.id;

  RouteStep local;
  local_search(net, sp, q, eps_acc, result, local);

  RouteStep ksp;
  ksp.hops = 1;
  auto dist = classify(*home.index, q.components);
  ksp.tree_visits = dist.nodes_visited;
  for (const auto& [target, p] : dist.probabilities) {
    if (p <= 0.0 || target == sp || !net.super_peers.count(target)) continue;
    RouteStep search;
    search.hops = 1;
    local_search(net, target, q, eps_acc, result, search);
    auto group = overlay.sp_to_group.find(target);
    if (group != overlay.sp_to_group.end() && group->second == home.id) {
      ksp.next.push_back(std::move(search));
    } else {
      RouteStep relay;  // the target's own KSP
      relay.hops = 1;
      relay.next.push_back(std::move(search));
      ksp.next.push_back(std::move(relay));
    }
  }

  // The origin searches its members while the KSP resolves targets.
  result.trace.next.push_back(std::move(local));
  result.trace.next.push_back(std::move(ksp));
  accumulate_costs(result);
  return result;
}

bool refresh_knowledge(KspOverlay& overlay, const QueryLog& cumulative,
                       std::uint32_t every_r, std::uint64_t routed,
                       std::size_t min_leaf) {
  if (every_r == 0 || routed == 0 || routed % every_r != 0) return false;
  train_indices(overlay, cumulative, min_leaf);
  for (auto& g : overlay.groups) ++g.trained_at;
  return true;
}

IndexAccuracy evaluate_index(const QueryLog& log, std::size_t min_leaf,
                             std::size_t holdout_every) {
  if (holdout_every < 2) throw Error("holdout_every must be at least 2");
  IndexAccuracy out;
  auto all = instances_from_log(log);
  if (all.empty()) return out;
  auto tree = build_tree(all, min_leaf);
  out.training = accuracy(tree, all);
  out.training_rows = all.size();

  std::vector<const LogRecord*> train;
  std::vector<const LogRecord*> test;
  for (std::size_t i = 0; i < log.records().size(); ++i) {
    (i % holdout_every == holdout_every - 1 ? test : train).push_back(&log.records()[i]);
  }
  auto train_rows = instances_from_records(train);
  auto test_rows = instances_from_records(test);
  if (!train_rows.empty() && !test_rows.empty()) {
    out.held_out = accuracy(build_tree(train_rows, min_leaf), test_rows);
    out.held_out_rows = test_rows.size();
  }
  return out;
}

}  // namespace sonsim
