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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sonsim/ids.hpp"

namespace sonsim {

// A symbolic label such as "kfp3". Labels are restricted to [A-Za-z0-9_-]
// so that elements can be joined with '.' and written unquoted into ARFF
// and tab-separated logs.
class Token {
 public:
  explicit Token(std::string label);

  const std::string& label() const noexcept { return label_; }

  friend bool operator==(const Token&, const Token&) = default;
  friend std::strong_ordering operator<=>(const Token& a, const Token& b) {
    return a.label_ <=> b.label_;
  }

 private:
  std::string label_;
};

inline constexpr char kElementSeparator = '.';

// An ordered couple (x, y). The 64-bit key is a hash of both labels used
// to speed up membership tests; equality always compares the labels.
class ExpertiseElement {
 public:
  ExpertiseElement(Token x, Token y);

  const Token& x() const noexcept { return x_; }
  const Token& y() const noexcept { return y_; }
  std::uint64_t key() const noexcept { return key_; }

  friend bool operator==(const ExpertiseElement& a, const ExpertiseElement& b) {
    return a.key_ == b.key_ && a.x_ == b.x_ && a.y_ == b.y_;
  }
  friend std::strong_ordering operator<=>(const ExpertiseElement& a,
                                          const ExpertiseElement& b) {
    if (auto c = a.x_ <=> b.x_; c != 0) return c;
    return a.y_ <=> b.y_;
  }

 private:
  Token x_;
  Token y_;
  std::uint64_t key_;
};

// "x.y"
std::string to_string(const ExpertiseElement& e);
ExpertiseElement parse_element(std::string_view text);

// A duplicate-free set of elements, kept sorted.
class Expertise {
 public:
  Expertise() = default;
  explicit Expertise(std::vector<ExpertiseElement> elements);

  // Returns false if the element was already present.
  bool insert(const ExpertiseElement& e);
  bool contains(const ExpertiseElement& e) const noexcept;

  std::size_t size() const noexcept { return elements_.size(); }
  bool empty() const noexcept { return elements_.empty(); }
  std::span<const ExpertiseElement> elements() const noexcept { return elements_; }

  auto begin() const noexcept { return elements_.begin(); }
  auto end() const noexcept { return elements_.end(); }

  friend bool operator==(const Expertise& a, const Expertise& b) {
    return a.elements_ == b.elements_;
  }

 private:
  void rebuild_index();

  std::vector<ExpertiseElement> elements_;
  // (key, position in elements_) sorted by key.
  std::vector<std::pair<std::uint64_t, std::uint32_t>> index_;
};

std::size_t intersection_size(const Expertise& a, const Expertise& b);

// A conjunction of expertise elements issued by one peer. Components
// may repeat; every position counts separately.
struct Query {
  std::uint64_t id = 0;
  PeerId origin_peer;
  std::vector<ExpertiseElement> components;
};

// Domain label of a super-peer, unique per network.
class DomainLabel {
 public:
  explicit DomainLabel(std::string name);

  const std::string& name() const noexcept { return name_; }

  friend bool operator==(const DomainLabel&, const DomainLabel&) = default;
  friend std::strong_ordering operator<=>(const DomainLabel& a,
                                          const DomainLabel& b) {
    return a.name_ <=> b.name_;
  }

 private:
  std::string name_;
};

// What a super-peer publishes about its community.
struct DomainAdvertisement {
  DomainAdvertisement(SuperPeerId pid, Expertise expertise, DomainLabel theme,
                      double eps_acc, std::uint32_t ttl);

  SuperPeerId pid;
  Expertise expertise;
  DomainLabel theme;
  double eps_acc;
  std::uint32_t ttl;
};

// Simulator-level similarity: 1 for identical couples, 0 otherwise.
double sim(const ExpertiseElement& a, const ExpertiseElement& b) noexcept;

// Number of query positions whose component belongs to `e`.
std::size_t matched_components(const Expertise& e, const Query& q);

// Fraction of the query's components covered by `e`. Throws on an empty
// query.
double capacity(const Expertise& e, const Query& q);

// capacity(e, q) >= eps_acc. The comparison is inclusive so that a
// threshold of 1.0 can be met.
bool is_relevant(const Expertise& e, const Query& q, double eps_acc);

}  // namespace sonsim
