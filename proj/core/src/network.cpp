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

#include "sonsim/network.hpp"

#include <algorithm>
#include <optional>

#include <fmt/format.h>

#include "sonsim/error.hpp"

namespace sonsim {

namespace {

void refresh_row(Network& net, SuperPeerId id) {
  const auto& exp = net.super_peer(id).expertise;
  for (const auto& [other_id, other] : net.super_peers) {
    if (other_id == id) continue;
    net.cormat.set(id, other_id,
                   static_cast<std::uint32_t>(intersection_size(exp, other.expertise)));
  }
}

template <class Range, class Fn>
std::string join(const Range& range, Fn&& render, std::string_view sep) {
  std::string out;
  bool first = true;
  for (const auto& item : range) {
    if (!first) out += sep;
    first = false;
    out += render(item);
  }
  return out;
}

}  // namespace

void CorrespondenceMatrix::add(SuperPeerId id) {
  if (!ids_.insert(id).second) return;
  for (auto other : ids_) {
    if (other != id) entries_[key(id, other)] = 0;
  }
}

void CorrespondenceMatrix::remove(SuperPeerId id) {
  if (ids_.erase(id) == 0) return;
  std::erase_if(entries_, [id](const auto& entry) {
    return entry.first.first == id || entry.first.second == id;
  });
}

std::pair<SuperPeerId, SuperPeerId> CorrespondenceMatrix::key(SuperPeerId a,
                                                              SuperPeerId b) {
  if (a == b) throw Error("correspondence matrix diagonal is unused");
  return a < b ? std::pair{a, b} : std::pair{b, a};
}

std::uint32_t CorrespondenceMatrix::at(SuperPeerId a, SuperPeerId b) const {
  auto it = entries_.find(key(a, b));
  if (it == entries_.end()) {
    throw Error("no correspondence entry for " + to_string(a) + "/" + to_string(b));
  }
  return it->second;
}

void CorrespondenceMatrix::set(SuperPeerId a, SuperPeerId b, std::uint32_t count) {
  auto it = entries_.find(key(a, b));
  if (it == entries_.end()) {
    throw Error("no correspondence entry for " + to_string(a) + "/" + to_string(b));
  }
  it->second = count;
}

const Peer& Network::peer(PeerId id) const {
  if (id.value >= peers.size()) throw Error("unknown peer " + to_string(id));
  return peers[id.value];
}

const SuperPeer& Network::super_peer(SuperPeerId id) const {
  auto it = super_peers.find(id);
  if (it == super_peers.end()) throw Error("unknown super-peer " + to_string(id));
  return it->second;
}

SuperPeer& Network::super_peer(SuperPeerId id) {
  auto it = super_peers.find(id);
  if (it == super_peers.end()) throw Error("unknown super-peer " + to_string(id));
  return it->second;
}

std::vector<DomainLabel> generate_domains(std::uint32_t nsp, Rng& rng) {
  constexpr std::uint32_t kLetters = 26;
  constexpr std::uint32_t kNameSpace = kLetters * kLetters * kLetters;
  if (nsp < 1) throw Error("at least one domain is required");
  if (nsp > kNameSpace) throw Error("too many domains for three-letter labels");

  std::set<std::string> used;
  std::vector<DomainLabel> out;
  out.reserve(nsp);
  while (out.size() < nsp) {
    std::string name(3, 'a');
    for (auto& c : name) c = static_cast<char>('a' + rng.uniform(kLetters));
    if (used.insert(name).second) out.emplace_back(std::move(name));
  }
  return out;
}

Expertise generate_sp_expertise(const DomainLabel& domain, std::uint32_t size,
                                std::uint32_t tokens_per_domain, Rng& rng) {
  if (size < 1) throw Error("super-peer expertise size must be at least 1");
  std::vector<Token> vocab;
  vocab.reserve(tokens_per_domain);
  for (std::uint32_t k = 0; k < tokens_per_domain; ++k) {
    vocab.emplace_back(domain.name() + std::to_string(k));
  }
  std::vector<ExpertiseElement> couples;
  for (const auto& x : vocab) {
    for (const auto& y : vocab) {
      if (x != y) couples.emplace_back(x, y);
    }
  }
  if (couples.size() < size) {
    throw Error(fmt::format("vocabulary of {} tokens yields only {} couples, {} requested",
                            tokens_per_domain, couples.size(), size));
  }
  std::vector<ExpertiseElement> picked;
  picked.reserve(size);
  for (auto i : rng.sample(couples.size(), size)) picked.push_back(couples[i]);
  return Expertise(std::move(picked));
}

void link_friends_and_duplicate(Network& net, std::uint32_t friends_per_sp,
                                std::uint32_t dup_count, Rng& rng) {
  if (dup_count == 0) {
    throw Error("dup_count must be positive so that friends share a mapping");
  }
  if (friends_per_sp > 0 && friends_per_sp >= net.super_peers.size()) {
    throw Error("friends_per_sp must be smaller than the number of super-peers");
  }
  for (const auto& [id, sp] : net.super_peers) {
    if (sp.expertise.size() < dup_count) {
      throw Error("dup_count exceeds the expertise size of " + to_string(id));
    }
  }
  if (friends_per_sp == 0) return;

  std::vector<SuperPeerId> ids;
  for (const auto& [id, sp] : net.super_peers) ids.push_back(id);

  for (auto self : ids) {
    std::vector<SuperPeerId> candidates;
    for (auto other : ids) {
      if (other != self) candidates.push_back(other);
    }
    for (auto pick : rng.sample(candidates.size(), friends_per_sp)) {
      auto target = candidates[pick];
      auto& source = net.super_peer(self);
      auto elements = source.expertise.elements();
      std::vector<ExpertiseElement> sent;
      for (auto i : rng.sample(elements.size(), dup_count)) sent.push_back(elements[i]);

      auto& dest = net.super_peer(target);
      for (const auto& e : sent) dest.expertise.insert(e);
      source.friends.insert(target);
      dest.friends.insert(self);
      refresh_row(net, target);
    }
  }
}

Expertise generate_peer_expertise(const SuperPeer& sp, std::uint32_t min_size,
                                  Rng& rng) {
  auto available = sp.expertise.size();
  if (available < min_size) {
    throw Error("expertise of " + to_string(sp.id) + " is smaller than the peer minimum");
  }
  auto size = static_cast<std::size_t>(rng.uniform_between(min_size, available));
  auto elements = sp.expertise.elements();
  std::vector<ExpertiseElement> picked;
  picked.reserve(size);
  for (auto i : rng.sample(available, size)) picked.push_back(elements[i]);
  return Expertise(std::move(picked));
}

Network build_son(const Config& config, Rng& rng) {
  config.validate();
  Network net;
  net.config = config;

  auto domains = generate_domains(config.nsp, rng);
  for (std::uint32_t i = 0; i < config.nsp; ++i) {
    SuperPeerId id{i};
    auto exp = generate_sp_expertise(domains[i], config.sp_expertise_size,
                                     config.tokens_per_domain, rng);
    net.super_peers.emplace(id, SuperPeer{id, domains[i], std::move(exp), {}, {}});
    net.cormat.add(id);
  }
  for (const auto& [id, sp] : net.super_peers) refresh_row(net, id);

  link_friends_and_duplicate(net, config.friends_per_sp, config.dup_count, rng);

  net.peers.reserve(config.np);
  for (std::uint32_t k = 0; k < config.np; ++k) {
    PeerId pid{k};
    auto& sp = net.super_peer(SuperPeerId{k % config.nsp});
    net.peers.push_back(
        Peer{pid, generate_peer_expertise(sp, config.min_peer_expertise, rng), sp.id});
    sp.members.insert(pid);
  }
  return net;
}

Network build_son(const Config& config) {
  Rng rng(derive_seed(config.seed, "network"));
  return build_son(config, rng);
}

std::uint32_t trust(const Network& net, SuperPeerId a, SuperPeerId b) {
  if (a == b) throw Error("trust is defined between distinct super-peers");
  return net.cormat.at(a, b);
}

void sp_departure(Network& net, SuperPeerId leaving) {
  if (!net.super_peers.count(leaving)) {
    throw Error("unknown super-peer " + to_string(leaving));
  }
  if (net.super_peers.size() < 2) {
    throw Error("the last super-peer cannot leave the network");
  }

  std::optional<SuperPeerId> heir;
  std::uint32_t best = 0;
  for (const auto& [id, sp] : net.super_peers) {
    if (id == leaving) continue;
    auto t = trust(net, leaving, id);
    if (!heir || t > best) {
      heir = id;
      best = t;
    }
  }

  auto& target = net.super_peer(*heir);
  for (auto pid : net.super_peer(leaving).members) {
    net.peers[pid.value].super_peer = target.id;
    target.members.insert(pid);
  }
  for (auto& [id, sp] : net.super_peers) sp.friends.erase(leaving);
  net.super_peers.erase(leaving);
  net.cormat.remove(leaving);
}

DomainAdvertisement advertise(const SuperPeer& sp, double eps_acc,
                              std::uint32_t ttl) {
  return DomainAdvertisement(sp.id, sp.expertise, sp.domain, eps_acc, ttl);
}

std::vector<PeerId> oracle_relevant_peers(const Network& net, const Query& q,
                                          double eps_acc) {
  std::vector<PeerId> out;
  for (const auto& p : net.peers) {
    if (is_relevant(p.expertise, q, eps_acc)) out.push_back(p.id);
  }
  return out;
}

std::string serialize(const Network& net) {
  auto render_element = [](const ExpertiseElement& e) { return to_string(e); };
  auto render_sp = [](SuperPeerId id) { return to_string(id); };
  auto render_peer = [](PeerId id) { return to_string(id); };

  std::string out = "# sonsim network\n";
  out += fmt::format("network seed={} np={} nsp={}\n", net.config.seed,
                     net.peers.size(), net.super_peers.size());
  for (const auto& [id, sp] : net.super_peers) {
    out += fmt::format("superpeer {} domain={} friends={} members={}\n",
                       to_string(id), sp.domain.name(), join(sp.friends, render_sp, ","),
                       join(sp.members, render_peer, ","));
    out += fmt::format("expertise {} {}\n", to_string(id),
                       join(sp.expertise, render_element, " "));
  }
  for (const auto& p : net.peers) {
    out += fmt::format("peer {} sp={} expertise={}\n", to_string(p.id),
                       to_string(p.super_peer), join(p.expertise, render_element, " "));
  }
  const auto& ids = net.cormat.ids();
  for (auto a = ids.begin(); a != ids.end(); ++a) {
    for (auto b = std::next(a); b != ids.end(); ++b) {
      out += fmt::format("cormat {} {} {}\n", to_string(*a), to_string(*b),
                         net.cormat.at(*a, *b));
    }
  }
  return out;
}

}  // namespace sonsim
