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
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "sonsim/ids.hpp"
#include "sonsim/model.hpp"
#include "sonsim/network.hpp"
#include "sonsim/rng.hpp"

namespace sonsim {

// A node of a query's forwarding tree. Work at a node is sequential; the
// branches in `next` start once it is done and run in parallel.
struct RouteStep {
  std::uint32_t hops = 0;  // messages on the way into this node
  std::uint64_t mapping_ops = 0;
  std::uint64_t tree_visits = 0;
  std::vector<RouteStep> next;
};

struct RoutingResult {
  std::uint64_t query_id = 0;
  std::set<PeerId> answering_peers;
  std::set<SuperPeerId> answering_sps;
  // Super-peers that searched their community for this query.
  std::set<SuperPeerId> contacted_sps;
  std::uint64_t mapping_ops = 0;
  std::uint64_t hops = 0;
  std::uint64_t tree_visits = 0;
  RouteStep trace;
};

struct LogRecord {
  std::uint64_t query_id = 0;
  PeerId origin_peer;
  SuperPeerId origin_sp;
  std::vector<ExpertiseElement> components;
  std::set<SuperPeerId> answering_sps;

  friend bool operator==(const LogRecord&, const LogRecord&) = default;
};

// Append-only trace of routed queries.
class QueryLog {
 public:
  // Throws on a repeated query id or a component count different from
  // earlier records.
  void append(LogRecord record);

  const std::vector<LogRecord>& records() const noexcept { return records_; }
  std::size_t size() const noexcept { return records_.size(); }
  bool empty() const noexcept { return records_.empty(); }

  friend bool operator==(const QueryLog& a, const QueryLog& b) {
    return a.records_ == b.records_;
  }

 private:
  std::vector<LogRecord> records_;
  std::set<std::uint64_t> ids_;
};

// Tab-separated: query_id, origin peer, origin super-peer, n components,
// then a comma-separated answering super-peer list (possibly empty).
std::string to_text(const QueryLog& log);
QueryLog parse_query_log(std::string_view text);

// `count` queries of `n` components each, drawn with replacement from
// the peer's expertise. Ids are first_id, first_id + 1, ...
std::vector<Query> generate_queries(const Peer& peer, std::uint32_t count,
                                    std::uint32_t n, Rng& rng,
                                    std::uint64_t first_id = 0);

// generate_queries for every peer in id order, ids consecutive from first_id.
std::vector<Query> generate_workload(const Network& net, std::uint32_t per_peer,
                                     std::uint32_t n, Rng& rng,
                                     std::uint64_t first_id = 0);

// Evaluates every member of `sp` against q and records the relevant ones.
// Capacity evaluations are charged to `step`.
void local_search(const Network& net, SuperPeerId sp, const Query& q,
                  double eps_acc, RoutingResult& result, RouteStep& step);

// Two-level semantic routing: exhaustive local search in the origin
// community, then friends whose theme is relevant receive the query and
// search their own communities, up to `max_hops` forwards away. Each
// super-peer handles a query at most once.
RoutingResult route_baseline(const Network& net, const Query& q, SuperPeerId sp,
                             double eps_acc, std::uint32_t max_hops);

// Fills the result's hop, mapping and tree-visit totals from its trace.
void accumulate_costs(RoutingResult& result);

LogRecord make_log_record(const Network& net, const Query& q,
                          const RoutingResult& result);

struct EpochResult {
  QueryLog log;
  std::vector<RoutingResult> results;
};

EpochResult run_baseline_epoch(const Network& net, const std::vector<Query>& workload,
                               double eps_acc, std::uint32_t max_hops);

}  // namespace sonsim
