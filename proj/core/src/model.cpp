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

#include "sonsim/model.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "sonsim/error.hpp"

namespace sonsim {

namespace {

bool valid_label_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9') || c == '_' || c == '-';
}

std::uint64_t fnv1a(std::string_view s, std::uint64_t h) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

template <class IdT>
IdT parse_prefixed(std::string_view text, std::string_view prefix) {
  if (!text.starts_with(prefix)) {
    throw Error("expected identifier with prefix '" + std::string(prefix) +
                "', got '" + std::string(text) + "'");
  }
  auto digits = text.substr(prefix.size());
  std::uint32_t v = 0;
  auto [p, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
  if (digits.empty() || ec != std::errc{} || p != digits.data() + digits.size()) {
    throw Error("malformed identifier '" + std::string(text) + "'");
  }
  return IdT{v};
}

}  // namespace

std::string to_string(PeerId id) { return "P" + std::to_string(id.value); }
std::string to_string(SuperPeerId id) { return "SP" + std::to_string(id.value); }
std::string to_string(KspId id) { return "KSP" + std::to_string(id.value); }

PeerId parse_peer_id(std::string_view text) {
  return parse_prefixed<PeerId>(text, "P");
}

SuperPeerId parse_super_peer_id(std::string_view text) {
  return parse_prefixed<SuperPeerId>(text, "SP");
}

Token::Token(std::string label) : label_(std::move(label)) {
  if (label_.empty()) throw Error("token label must be non-empty");
  if (!std::all_of(label_.begin(), label_.end(), valid_label_char)) {
    throw Error("token label '" + label_ + "' contains a reserved character");
  }
}

ExpertiseElement::ExpertiseElement(Token x, Token y)
    : x_(std::move(x)), y_(std::move(y)) {
  std::uint64_t h = fnv1a(x_.label(), 0xcbf29ce484222325ULL);
  h = fnv1a(std::string_view(&kElementSeparator, 1), h);
  key_ = fnv1a(y_.label(), h);
}

std::string to_string(const ExpertiseElement& e) {
  std::string out = e.x().label();
  out += kElementSeparator;
  out += e.y().label();
  return out;
}

ExpertiseElement parse_element(std::string_view text) {
  auto pos = text.find(kElementSeparator);
  if (pos == std::string_view::npos ||
      text.find(kElementSeparator, pos + 1) != std::string_view::npos) {
    throw Error("malformed expertise element '" + std::string(text) + "'");
  }
  return ExpertiseElement(Token(std::string(text.substr(0, pos))),
                          Token(std::string(text.substr(pos + 1))));
}

Expertise::Expertise(std::vector<ExpertiseElement> elements)
    : elements_(std::move(elements)) {
  std::sort(elements_.begin(), elements_.end());
  elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
  rebuild_index();
}

bool Expertise::insert(const ExpertiseElement& e) {
  auto it = std::lower_bound(elements_.begin(), elements_.end(), e);
  if (it != elements_.end() && *it == e) return false;
  elements_.insert(it, e);
  rebuild_index();
  return true;
}

bool Expertise::contains(const ExpertiseElement& e) const noexcept {
  auto it = std::lower_bound(
      index_.begin(), index_.end(), e.key(),
      [](const auto& entry, std::uint64_t k) { return entry.first < k; });
  for (; it != index_.end() && it->first == e.key(); ++it) {
    if (elements_[it->second] == e) return true;
  }
  return false;
}

void Expertise::rebuild_index() {
  index_.clear();
  index_.reserve(elements_.size());
  for (std::uint32_t i = 0; i < elements_.size(); ++i) {
    index_.emplace_back(elements_[i].key(), i);
  }
  std::sort(index_.begin(), index_.end());
}

std::size_t intersection_size(const Expertise& a, const Expertise& b) {
  std::size_t count = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib) {
      ++ia;
    } else if (*ib < *ia) {
      ++ib;
    } else {
      ++count;
      ++ia;
      ++ib;
    }
  }
  return count;
}

DomainLabel::DomainLabel(std::string name) : name_(std::move(name)) {
  if (name_.empty()) throw Error("domain label must be non-empty");
  if (!std::all_of(name_.begin(), name_.end(), valid_label_char)) {
    throw Error("domain label '" + name_ + "' contains a reserved character");
  }
}

DomainAdvertisement::DomainAdvertisement(SuperPeerId pid_, Expertise expertise_,
                                         DomainLabel theme_, double eps_acc_,
                                         std::uint32_t ttl_)
    : pid(pid_),
      expertise(std::move(expertise_)),
      theme(std::move(theme_)),
      eps_acc(eps_acc_),
      ttl(ttl_) {
  if (!(eps_acc >= 0.0 && eps_acc <= 1.0)) {
    throw Error("eps_acc must lie in [0, 1]");
  }
}

double sim(const ExpertiseElement& a, const ExpertiseElement& b) noexcept {
  return a == b ? 1.0 : 0.0;
}

std::size_t matched_components(const Expertise& e, const Query& q) {
  if (q.components.empty()) throw Error("empty query");
  std::size_t matched = 0;
  for (const auto& c : q.components) {
    if (e.contains(c)) ++matched;
  }
  return matched;
}

double capacity(const Expertise& e, const Query& q) {
  auto matched = matched_components(e, q);
  return static_cast<double>(matched) / static_cast<double>(q.components.size());
}

bool is_relevant(const Expertise& e, const Query& q, double eps_acc) {
  if (!(eps_acc >= 0.0 && eps_acc <= 1.0)) {
    throw Error("eps_acc must lie in [0, 1]");
  }
  auto matched = matched_components(e, q);
  // Integer form of matched / n >= eps_acc, immune to rounding at the
  // boundary (e.g. 3/4 vs 0.75).
  auto n = static_cast<double>(q.components.size());
  auto needed = static_cast<std::size_t>(std::ceil(eps_acc * n - 1e-9));
  return matched >= needed;
}

}  // namespace sonsim
