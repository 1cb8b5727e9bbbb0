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
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "sonsim/config.hpp"
#include "sonsim/ids.hpp"
#include "sonsim/model.hpp"
#include "sonsim/rng.hpp"

namespace sonsim {

struct SuperPeer {
  SuperPeerId id;
  DomainLabel domain;
  Expertise expertise;
  std::set<SuperPeerId> friends;
  std::set<PeerId> members;
};

struct Peer {
  PeerId id;
  Expertise expertise;
  SuperPeerId super_peer;
};

// Symmetric count of shared expertise elements between super-peers.
// Holds an entry (possibly zero) for every unordered pair of registered
// super-peers.
class CorrespondenceMatrix {
 public:
  void add(SuperPeerId id);
  void remove(SuperPeerId id);
  bool contains(SuperPeerId id) const { return ids_.count(id) != 0; }

  std::uint32_t at(SuperPeerId a, SuperPeerId b) const;
  void set(SuperPeerId a, SuperPeerId b, std::uint32_t count);

  const std::set<SuperPeerId>& ids() const noexcept { return ids_; }

  friend bool operator==(const CorrespondenceMatrix&,
                         const CorrespondenceMatrix&) = default;

 private:
  static std::pair<SuperPeerId, SuperPeerId> key(SuperPeerId a, SuperPeerId b);

  std::set<SuperPeerId> ids_;
  std::map<std::pair<SuperPeerId, SuperPeerId>, std::uint32_t> entries_;
};

// The semantic overlay: communities (a super-peer and its members) plus
// the inter-community links recorded in the correspondence matrix.
struct Network {
  Config config;
  std::vector<Peer> peers;  // peers[i].id == PeerId{i}
  std::map<SuperPeerId, SuperPeer> super_peers;
  CorrespondenceMatrix cormat;

  const Peer& peer(PeerId id) const;
  const SuperPeer& super_peer(SuperPeerId id) const;
  SuperPeer& super_peer(SuperPeerId id);
};

// Step 1 of network initialization: nsp pairwise distinct labels.
std::vector<DomainLabel> generate_domains(std::uint32_t nsp, Rng& rng);

// `size` distinct couples over the domain's own vocabulary
// (`tokens_per_domain` tokens named <domain><k>), so two domains never
// share an element before duplication.
Expertise generate_sp_expertise(const DomainLabel& domain, std::uint32_t size,
                                std::uint32_t tokens_per_domain, Rng& rng);

// Every super-peer, in id order, picks `friends_per_sp` friends and copies
// `dup_count` of its current elements into each friend. Friendship is
// recorded both ways and the matrix rows of both ends are recomputed after
// every copy.
void link_friends_and_duplicate(Network& net, std::uint32_t friends_per_sp,
                                std::uint32_t dup_count, Rng& rng);

// A uniform subset of the super-peer's expertise whose size is uniform in
// [min_size, |sp.expertise|].
Expertise generate_peer_expertise(const SuperPeer& sp, std::uint32_t min_size,
                                  Rng& rng);

// Domains and super-peer expertise, then friend links and duplication,
// then peers (attached round-robin: peer k joins SP k mod nsp).
Network build_son(const Config& config, Rng& rng);

// Convenience: build_son with the "network" sub-stream of config.seed.
Network build_son(const Config& config);

// Number of shared expertise elements between two distinct super-peers.
std::uint32_t trust(const Network& net, SuperPeerId a, SuperPeerId b);

// Removes a super-peer. Its members move to the remaining super-peer it
// trusts most (lowest id on ties).
void sp_departure(Network& net, SuperPeerId leaving);

DomainAdvertisement advertise(const SuperPeer& sp, double eps_acc,
                              std::uint32_t ttl);

// Exhaustive ground truth: every peer whose expertise is relevant to q.
// Sorted by id.
std::vector<PeerId> oracle_relevant_peers(const Network& net, const Query& q,
                                          double eps_acc);

// Line-oriented text rendering (header, super-peers, peers, matrix).
std::string serialize(const Network& net);

}  // namespace sonsim
