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


// Small builders shared by the unit and acceptance tests.

#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sonsim/model.hpp"
#include "sonsim/network.hpp"

namespace sonsim::testing {

inline ExpertiseElement el(std::string_view text) { return parse_element(text); }

inline Expertise expertise(std::initializer_list<std::string_view> items) {
  std::vector<ExpertiseElement> v;
  for (auto s : items) v.push_back(el(s));
  return Expertise(std::move(v));
}

inline Query query(std::initializer_list<std::string_view> items,
                   PeerId origin = PeerId{0}, std::uint64_t id = 0) {
  Query q;
  q.id = id;
  q.origin_peer = origin;
  for (auto s : items) q.components.push_back(el(s));
  return q;
}

struct PeerSpec {
  std::uint32_t sp;
  std::vector<std::string> items;
};

// A network assembled by hand. Super-peer k gets expertise sps[k]; friend
// pairs are recorded both ways; the correspondence matrix is recomputed from
// the final expertise sets.
inline Network hand_network(const std::vector<std::vector<std::string>>& sps,
                            const std::vector<std::pair<std::uint32_t, std::uint32_t>>& friends,
                            const std::vector<PeerSpec>& peers) {
  Network net;
  net.config.np = static_cast<std::uint32_t>(peers.size());
  net.config.nsp = static_cast<std::uint32_t>(sps.size());
  for (std::uint32_t k = 0; k < sps.size(); ++k) {
    std::vector<ExpertiseElement> items;
    for (const auto& s : sps[k]) items.push_back(el(s));
    SuperPeerId id{k};
    net.super_peers.emplace(
        id, SuperPeer{id, DomainLabel("d" + std::to_string(k)), Expertise(std::move(items)), {}, {}});
    net.cormat.add(id);
  }
  for (auto [a, b] : friends) {
    net.super_peer(SuperPeerId{a}).friends.insert(SuperPeerId{b});
    net.super_peer(SuperPeerId{b}).friends.insert(SuperPeerId{a});
  }
  for (const auto& [a, sa] : net.super_peers) {
    for (const auto& [b, sb] : net.super_peers) {
      if (a < b) {
        net.cormat.set(a, b, static_cast<std::uint32_t>(
                                 intersection_size(sa.expertise, sb.expertise)));
      }
    }
  }
  for (std::uint32_t k = 0; k < peers.size(); ++k) {
    std::vector<ExpertiseElement> items;
    for (const auto& s : peers[k].items) items.push_back(el(s));
    PeerId pid{k};
    net.peers.push_back(Peer{pid, Expertise(std::move(items)), SuperPeerId{peers[k].sp}});
    net.super_peer(SuperPeerId{peers[k].sp}).members.insert(pid);
  }
  return net;
}

// Capacity recount that never calls into the library's relevance code.
inline bool brute_relevant(const Expertise& e, const Query& q, double eps) {
  std::size_t hits = 0;
  for (const auto& c : q.components) {
    for (const auto& x : e.elements()) {
      if (x.x().label() == c.x().label() && x.y().label() == c.y().label()) {
        ++hits;
        break;
      }
    }
  }
  return static_cast<double>(hits) + 1e-9 >= eps * static_cast<double>(q.components.size());
}

// Small network configs that generate fast.
inline Config small_config(std::uint64_t seed, std::uint32_t np = 100, std::uint32_t nsp = 10) {
  Config c;
  c.seed = seed;
  c.np = np;
  c.nsp = nsp;
  return c;
}

}  // namespace sonsim::testing
