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
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "sonsim/baseline.hpp"
#include "sonsim/dtree.hpp"
#include "sonsim/ids.hpp"
#include "sonsim/network.hpp"

namespace sonsim {

// A domain-group and its Knowledge-Super-Peer: the member super-peers and
// the decision-tree index trained on the queries they originated.
struct KspGroup {
  KspId id;
  std::set<SuperPeerId> members;
  std::optional<DecisionTree> index;
  QueryLog log_slice;
  std::uint64_t trained_at = 0;  // number of refreshes since first training
};

struct KspOverlay {
  std::vector<KspGroup> groups;  // groups[k].id == KspId{k}
  std::map<SuperPeerId, KspId> sp_to_group;

  const KspGroup& group_of(SuperPeerId sp) const;
};

// Connected components of the super-peer graph whose edges join pairs with
// trust >= tau_trust. Group ids follow the smallest member id.
KspOverlay form_groups(const Network& net, std::uint32_t tau_trust);

// One training row per (record, answering super-peer) pair; records
// without answers contribute nothing.
std::vector<Instance> instances_from_log(const QueryLog& log);

// Each group trains on the records its members originated. Class labels may
// name any super-peer of the network. A group with no such record gets a
// single leaf over the class distribution of the whole log.
void train_indices(KspOverlay& overlay, const QueryLog& log, std::size_t min_leaf);

// Knowledge-based routing. The origin super-peer searches its community
// and hands the query to its KSP, which picks target super-peers from its
// index without any theme mapping. Targets in the same group are one hop
// away; foreign ones are reached through their own KSP (two hops).
RoutingResult route_kb(const Network& net, const KspOverlay& overlay, const Query& q,
                       SuperPeerId sp, double eps_acc);

// Re-trains on the cumulative log every `every_r` routed queries and bumps
// trained_at. Returns whether a retraining happened. every_r == 0 keeps the
// knowledge static.
bool refresh_knowledge(KspOverlay& overlay, const QueryLog& cumulative,
                       std::uint32_t every_r, std::uint64_t routed,
                       std::size_t min_leaf);

struct IndexAccuracy {
  double training = 0.0;
  double held_out = 0.0;
  std::size_t training_rows = 0;
  std::size_t held_out_rows = 0;
};

// Training-set accuracy of one tree over the whole log, and accuracy on
// every `holdout_every`-th record (by position) of a tree trained on the
// rest.
IndexAccuracy evaluate_index(const QueryLog& log, std::size_t min_leaf,
                             std::size_t holdout_every = 5);

}  // namespace sonsim
