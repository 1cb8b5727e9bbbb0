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


// Decision-tree fixtures: the classic 14-row weather table encoded as
// couples (SP1 = play, SP0 = don't play) and a tree shaped like the
// published query-log index.

#pragma once

#include <array>
#include <string_view>
#include <utility>
#include <vector>

#include "sonsim/dtree.hpp"
#include "sonsim/model.hpp"

namespace sonsim::testing {

inline std::vector<Instance> weather_instances() {
  struct Row {
    std::array<std::string_view, 4> attrs;
    std::uint32_t label;
  };
  static constexpr Row kRows[] = {
      {{"o.sunny", "t.hot", "h.high", "w.weak"}, 0},
      {{"o.sunny", "t.hot", "h.high", "w.strong"}, 0},
      {{"o.overcast", "t.hot", "h.high", "w.weak"}, 1},
      {{"o.rain", "t.mild", "h.high", "w.weak"}, 1},
      {{"o.rain", "t.cool", "h.normal", "w.weak"}, 1},
      {{"o.rain", "t.cool", "h.normal", "w.strong"}, 0},
      {{"o.overcast", "t.cool", "h.normal", "w.strong"}, 1},
      {{"o.sunny", "t.mild", "h.high", "w.weak"}, 0},
      {{"o.sunny", "t.cool", "h.normal", "w.weak"}, 1},
      {{"o.rain", "t.mild", "h.normal", "w.weak"}, 1},
      {{"o.sunny", "t.mild", "h.normal", "w.strong"}, 1},
      {{"o.overcast", "t.mild", "h.high", "w.strong"}, 1},
      {{"o.overcast", "t.hot", "h.normal", "w.weak"}, 1},
      {{"o.rain", "t.mild", "h.high", "w.strong"}, 0},
  };
  std::vector<Instance> out;
  for (const auto& row : kRows) {
    Instance i;
    for (auto a : row.attrs) i.attributes.push_back(parse_element(a));
    i.label = SuperPeerId{row.label};
    out.push_back(std::move(i));
  }
  return out;
}

// Leaf counts reproduce the published per-leaf numbers.
inline DecisionTree published_index_tree() {
  auto leaf = [](std::uint32_t cls, std::uint64_t total, std::uint64_t wrong) {
    ClassCounts c{{SuperPeerId(cls), total - wrong}};
    if (wrong > 0) c[SuperPeerId(cls == 9 ? 8 : 9)] = wrong;
    return DecisionTree::leaf(c, 4);
  };
  auto kf = DecisionTree::internal(1, {{SuperPeerId(0), 79}},
                                   {{parse_element("p.i"), leaf(0, 26, 11)},
                                    {parse_element("f.p"), leaf(0, 12, 0)},
                                    {parse_element("g.f"), leaf(3, 26, 0)},
                                    {parse_element("g.h"), leaf(0, 15, 0)}},
                                   4);
  auto d_o = DecisionTree::internal(3, {{SuperPeerId(3), 91}},
                                    {{parse_element("r.m"), leaf(3, 38, 16)},
                                     {parse_element("i.c"), leaf(3, 25, 0)},
                                     {parse_element("s.d"), leaf(6, 28, 0)}},
                                    4);
  return DecisionTree::internal(0, {{SuperPeerId(1), 1}},
                                {{parse_element("k.f"), kf},
                                 {parse_element("p.i"), leaf(0, 50, 0)},
                                 {parse_element("f.l"), leaf(1, 78, 12)},
                                 {parse_element("f.p"), leaf(1, 159, 14)},
                                 {parse_element("d.o"), d_o},
                                 {parse_element("r.m"), leaf(5, 393, 138)},
                                 {parse_element("g.f"), leaf(3, 46, 0)},
                                 {parse_element("i.c"), leaf(3, 157, 37)}},
                                4);
}

// The published tree's lines, branches listed in value order.
inline constexpr std::string_view kPublishedIndexText =
    "composanteW1 = d.o\n"
    "| composanteW4 = i.c: SP3 (25.0)\n"
    "| composanteW4 = r.m: SP3 (38.0/16.0)\n"
    "| composanteW4 = s.d: SP6 (28.0)\n"
    "composanteW1 = f.l: SP1 (78.0/12.0)\n"
    "composanteW1 = f.p: SP1 (159.0/14.0)\n"
    "composanteW1 = g.f: SP3 (46.0)\n"
    "composanteW1 = i.c: SP3 (157.0/37.0)\n"
    "composanteW1 = k.f\n"
    "| composanteW2 = f.p: SP0 (12.0)\n"
    "| composanteW2 = g.f: SP3 (26.0)\n"
    "| composanteW2 = g.h: SP0 (15.0)\n"
    "| composanteW2 = p.i: SP0 (26.0/11.0)\n"
    "composanteW1 = p.i: SP0 (50.0)\n"
    "composanteW1 = r.m: SP5 (393.0/138.0)\n";

}  // namespace sonsim::testing
