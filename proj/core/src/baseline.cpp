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

#include "sonsim/baseline.hpp"

#include <charconv>

#include <fmt/format.h>

#include "sonsim/error.hpp"

namespace sonsim {

namespace {

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    auto pos = line.find(sep, start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace

void QueryLog::append(LogRecord record) {
  if (!records_.empty() &&
      record.components.size() != records_.front().components.size()) {
    throw Error("log record component count differs from earlier records");
  }
  if (!ids_.insert(record.query_id).second) {
    throw Error(fmt::format("duplicate query id {} in log", record.query_id));
  }
  records_.push_back(std::move(record));
}

std::string to_text(const QueryLog& log) {
  std::string out = "# query_id\torigin_peer\torigin_sp\tcomponents...\tanswering_sps\n";
  for (const auto& r : log.records()) {
    out += fmt::format("{}\t{}\t{}", r.query_id, to_string(r.origin_peer),
                       to_string(r.origin_sp));
    for (const auto& c : r.components) {
      out += '\t';
      out += to_string(c);
    }
    out += '\t';
    bool first = true;
    for (auto sp : r.answering_sps) {
      if (!first) out += ',';
      first = false;
      out += to_string(sp);
    }
    out += '\n';
  }
  return out;
}

QueryLog parse_query_log(std::string_view text) {
  QueryLog log;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    auto nl = text.find('\n');
    auto line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;

    auto fields = split(line, '\t');
    if (fields.size() < 5) {
      throw ParseError("expected at least 5 tab-separated fields", line_no);
    }
    try {
      LogRecord r;
      auto id = fields[0];
      auto [p, ec] = std::from_chars(id.data(), id.data() + id.size(), r.query_id);
      if (ec != std::errc{} || p != id.data() + id.size()) {
        throw Error("malformed query id '" + std::string(id) + "'");
      }
      r.origin_peer = parse_peer_id(fields[1]);
      r.origin_sp = parse_super_peer_id(fields[2]);
      for (std::size_t i = 3; i + 1 < fields.size(); ++i) {
        r.components.push_back(parse_element(fields[i]));
      }
      if (!fields.back().empty()) {
        for (auto sp : split(fields.back(), ',')) {
          r.answering_sps.insert(parse_super_peer_id(sp));
        }
      }
      log.append(std::move(r));
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(e.what(), line_no);
    }
  }
  return log;
}

std::vector<Query> generate_queries(const Peer& peer, std::uint32_t count,
                                    std::uint32_t n, Rng& rng,
                                    std::uint64_t first_id) {
  if (peer.expertise.empty()) {
    throw Error("cannot derive queries from the empty expertise of " +
                to_string(peer.id));
  }
  if (n < 1) throw Error("queries need at least one component");
  auto elements = peer.expertise.elements();
  std::vector<Query> out;
  out.reserve(count);
  for (std::uint32_t i = 0; i < count; ++i) {
    Query q;
    q.id = first_id + i;
    q.origin_peer = peer.id;
    q.components.reserve(n);
    for (std::uint32_t c = 0; c < n; ++c) {
      q.components.push_back(elements[rng.uniform(elements.size())]);
    }
    out.push_back(std::move(q));
  }
  return out;
}

std::vector<Query> generate_workload(const Network& net, std::uint32_t per_peer,
                                     std::uint32_t n, Rng& rng,
                                     std::uint64_t first_id) {
  std::vector<Query> out;
  out.reserve(net.peers.size() * per_peer);
  for (const auto& p : net.peers) {
    auto batch = generate_queries(p, per_peer, n, rng, first_id + out.size());
    std::move(batch.begin(), batch.end(), std::back_inserter(out));
  }
  return out;
}

void local_search(const Network& net, SuperPeerId sp, const Query& q,
                  double eps_acc, RoutingResult& result, RouteStep& step) {
  const auto& community = net.super_peer(sp);
  result.contacted_sps.insert(sp);
  for (auto pid : community.members) {
    ++step.mapping_ops;
    if (is_relevant(net.peer(pid).expertise, q, eps_acc)) {
      result.answering_peers.insert(pid);
      result.answering_sps.insert(sp);
    }
  }
}

RoutingResult route_baseline(const Network& net, const Query& q, SuperPeerId sp,
                             double eps_acc, std::uint32_t max_hops) {
  net.super_peer(sp);  // throws on an unknown super-peer

  RoutingResult result;
  result.query_id = q.id;
  local_search(net, sp, q, eps_acc, result, result.trace);

  struct Pending {
    SuperPeerId id;
    RouteStep* step;
  };
  std::set<SuperPeerId> visited{sp};
  std::vector<Pending> frontier{{sp, &result.trace}};

  for (std::uint32_t depth = 0; depth < max_hops && !frontier.empty(); ++depth) {
    std::vector<Pending> next;
    for (auto [current, step] : frontier) {
      std::vector<SuperPeerId> forwarded;
      for (auto f : net.super_peer(current).friends) {
        if (visited.count(f)) continue;
        ++step->mapping_ops;  // theme of the friend against q
        if (!is_relevant(net.super_peer(f).expertise, q, eps_acc)) continue;
        visited.insert(f);
        RouteStep child;
        child.hops = 1;
        local_search(net, f, q, eps_acc, result, child);
        step->next.push_back(std::move(child));
        forwarded.push_back(f);
      }
      // step->next is complete for this node, so its addresses are stable.
      for (std::size_t i = 0; i < forwarded.size(); ++i) {
        auto offset = step->next.size() - forwarded.size() + i;
        next.push_back({forwarded[i], &step->next[offset]});
      }
    }
    frontier = std::move(next);
  }

  accumulate_costs(result);
  return result;
}

void accumulate_costs(RoutingResult& result) {
  result.hops = 0;
  result.mapping_ops = 0;
  result.tree_visits = 0;
  auto visit = [&result](const RouteStep& step, const auto& self) -> void {
    result.hops += step.hops;
    result.mapping_ops += step.mapping_ops;
    result.tree_visits += step.tree_visits;
    for (const auto& child : step.next) self(child, self);
  };
  visit(result.trace, visit);
}

LogRecord make_log_record(const Network& net, const Query& q,
                          const RoutingResult& result) {
  LogRecord r;
  r.query_id = q.id;
  r.origin_peer = q.origin_peer;
  r.origin_sp = net.peer(q.origin_peer).super_peer;
  r.components = q.components;
  r.answering_sps = result.answering_sps;
  return r;
}

EpochResult run_baseline_epoch(const Network& net, const std::vector<Query>& workload,
                               double eps_acc, std::uint32_t max_hops) {
  if (workload.empty()) throw Error("baseline epoch needs a non-empty workload");
  EpochResult epoch;
  epoch.results.reserve(workload.size());
  for (const auto& q : workload) {
    auto sp = net.peer(q.origin_peer).super_peer;
    auto result = route_baseline(net, q, sp, eps_acc, max_hops);
    epoch.log.append(make_log_record(net, q, result));
    epoch.results.push_back(std::move(result));
  }
  return epoch;
}

}  // namespace sonsim
