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
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

namespace sonsim {

template <class Tag>
struct Id {
  std::uint32_t value = 0;

  constexpr Id() = default;
  constexpr explicit Id(std::uint32_t v) : value(v) {}

  friend constexpr auto operator<=>(Id, Id) = default;
};

using PeerId = Id<struct PeerTag>;
using SuperPeerId = Id<struct SuperPeerTag>;
using KspId = Id<struct KspTag>;

// Rendered as "P12", "SP3" and "KSP0". SP labels are the class values of
// the decision-tree index and must round-trip through ARFF.
std::string to_string(PeerId id);
std::string to_string(SuperPeerId id);
std::string to_string(KspId id);

PeerId parse_peer_id(std::string_view text);
SuperPeerId parse_super_peer_id(std::string_view text);

}  // namespace sonsim

template <class Tag>
struct std::hash<sonsim::Id<Tag>> {
  std::size_t operator()(sonsim::Id<Tag> id) const noexcept {
    return std::hash<std::uint32_t>{}(id.value);
  }
};
