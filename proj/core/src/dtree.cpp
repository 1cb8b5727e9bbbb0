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

#include "sonsim/dtree.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "sonsim/error.hpp"

namespace sonsim {

namespace {

using Node = DecisionTree::Node;
using Rows = std::vector<std::uint32_t>;

constexpr double kTieEpsilon = 1e-12;

std::vector<std::uint64_t> values_of(const ClassCounts& counts) {
  std::vector<std::uint64_t> out;
  out.reserve(counts.size());
  for (const auto& [label, n] : counts) out.push_back(n);
  return out;
}

ClassCounts count_classes(std::span<const Instance> all, const Rows& rows) {
  ClassCounts counts;
  for (auto r : rows) ++counts[all[r].label];
  return counts;
}

struct SplitScore {
  double gain = 0.0;
  double ratio = 0.0;
  std::size_t distinct_values = 0;
};

SplitScore score_split(std::span<const Instance> all, const Rows& rows,
                       std::size_t attribute, double base_entropy) {
  std::map<ExpertiseElement, ClassCounts> partitions;
  for (auto r : rows) ++partitions[all[r].attributes.at(attribute)][all[r].label];

  const auto total = static_cast<double>(rows.size());
  double remainder = 0.0;
  double split_info = 0.0;
  for (const auto& [value, counts] : partitions) {
    std::uint64_t size = 0;
    for (const auto& [label, n] : counts) size += n;
    const double weight = static_cast<double>(size) / total;
    remainder += weight * entropy(counts);
    split_info -= weight * std::log2(weight);
  }

  SplitScore s;
  s.distinct_values = partitions.size();
  s.gain = std::max(0.0, base_entropy - remainder);
  s.ratio = split_info > 0.0 ? s.gain / split_info : 0.0;
  return s;
}

Rows all_rows(std::size_t n) {
  Rows rows(n);
  for (std::uint32_t i = 0; i < n; ++i) rows[i] = i;
  return rows;
}

std::shared_ptr<const Node> grow(std::span<const Instance> all, const Rows& rows,
                                 const std::vector<std::size_t>& attributes,
                                 std::size_t min_leaf) {
  auto node = std::make_shared<Node>();
  node->counts = count_classes(all, rows);
  if (node->counts.size() <= 1 || attributes.empty() || rows.size() < min_leaf) {
    return node;
  }

  const double base = entropy(node->counts);
  std::optional<std::size_t> best;
  double best_ratio = -1.0;
  for (auto a : attributes) {
    auto s = score_split(all, rows, a, base);
    if (s.distinct_values < 2) continue;
    if (s.ratio > best_ratio + kTieEpsilon) {
      best = a;
      best_ratio = s.ratio;
    }
  }
  if (!best) return node;

  std::map<ExpertiseElement, Rows> partitions;
  for (auto r : rows) partitions[all[r].attributes[*best]].push_back(r);

  std::vector<std::size_t> remaining;
  for (auto a : attributes) {
    if (a != *best) remaining.push_back(a);
  }
  node->split = *best;
  for (const auto& [value, subset] : partitions) {
    node->branches.emplace(value, grow(all, subset, remaining, min_leaf));
  }
  return node;
}

std::size_t depth_of(const Node& node) {
  std::size_t deepest = 0;
  for (const auto& [value, child] : node.branches) {
    deepest = std::max(deepest, depth_of(*child));
  }
  return node.split ? deepest + 1 : 0;
}

std::string format_count(std::uint64_t n) { return fmt::format("{}.0", n); }

std::string leaf_suffix(const ClassCounts& counts) {
  std::uint64_t total = 0;
  for (const auto& [label, n] : counts) total += n;
  auto winner = majority(counts);
  auto wrong = total - counts.at(winner);
  if (wrong == 0) {
    return fmt::format(": {} ({})", to_string(winner), format_count(total));
  }
  return fmt::format(": {} ({}/{})", to_string(winner), format_count(total),
                     format_count(wrong));
}

void render_node(const Node& node, std::size_t level, std::string& out) {
  for (const auto& [value, child] : node.branches) {
    for (std::size_t i = 0; i < level; ++i) out += "| ";
    out += fmt::format("{} = {}", attribute_name(*node.split), to_string(value));
    if (child->split) {
      out += '\n';
      render_node(*child, level + 1, out);
    } else {
      out += leaf_suffix(child->counts);
      out += '\n';
    }
  }
}

}  // namespace

DecisionTree DecisionTree::leaf(ClassCounts counts, std::size_t arity) {
  if (counts.empty()) throw Error("a leaf needs at least one class count");
  auto node = std::make_shared<Node>();
  node->counts = std::move(counts);
  return DecisionTree(std::move(node), arity);
}

DecisionTree DecisionTree::internal(
    std::size_t attribute, ClassCounts counts,
    std::vector<std::pair<ExpertiseElement, DecisionTree>> children,
    std::size_t arity) {
  if (attribute >= arity) throw Error("split attribute out of range");
  if (children.empty()) throw Error("an internal node needs at least one branch");
  auto node = std::make_shared<Node>();
  node->counts = std::move(counts);
  node->split = attribute;
  for (auto& [value, child] : children) {
    if (child.arity() != arity) throw Error("child tree arity mismatch");
    if (!node->branches.emplace(value, child.root_).second) {
      throw Error("duplicate branch value " + to_string(value));
    }
  }
  return DecisionTree(std::move(node), arity);
}

std::size_t DecisionTree::depth() const { return depth_of(*root_); }

double entropy(std::span<const std::uint64_t> counts) {
  std::uint64_t total = 0;
  for (auto n : counts) total += n;
  if (total == 0) throw Error("entropy of an empty distribution");
  double h = 0.0;
  for (auto n : counts) {
    if (n == 0) continue;
    const double p = static_cast<double>(n) / static_cast<double>(total);
    h -= p * std::log2(p);
  }
  return h;
}

double entropy(const ClassCounts& counts) {
  auto v = values_of(counts);
  return entropy(std::span<const std::uint64_t>(v));
}

double information_gain(std::span<const Instance> instances, std::size_t attribute) {
  auto rows = all_rows(instances.size());
  return score_split(instances, rows, attribute, entropy(count_classes(instances, rows)))
      .gain;
}

double gain_ratio(std::span<const Instance> instances, std::size_t attribute) {
  auto rows = all_rows(instances.size());
  return score_split(instances, rows, attribute, entropy(count_classes(instances, rows)))
      .ratio;
}

DecisionTree build_tree(std::span<const Instance> instances,
                        std::vector<std::size_t> attributes, std::size_t min_leaf) {
  if (instances.empty()) throw Error("cannot induce a tree from zero instances");
  const auto arity = instances.front().attributes.size();
  for (const auto& inst : instances) {
    if (inst.attributes.size() != arity) {
      throw Error("instances disagree on the number of attributes");
    }
  }
  std::sort(attributes.begin(), attributes.end());
  attributes.erase(std::unique(attributes.begin(), attributes.end()), attributes.end());
  for (auto a : attributes) {
    if (a >= arity) throw Error("attribute index out of range");
  }
  return DecisionTree(grow(instances, all_rows(instances.size()), attributes, min_leaf),
                      arity);
}

DecisionTree build_tree(std::span<const Instance> instances, std::size_t min_leaf) {
  std::vector<std::size_t> attributes(instances.empty() ? 0
                                                        : instances.front().attributes.size());
  for (std::size_t i = 0; i < attributes.size(); ++i) attributes[i] = i;
  return build_tree(instances, std::move(attributes), min_leaf);
}

ClassDistribution classify(const DecisionTree& tree,
                           std::span<const ExpertiseElement> attributes) {
  if (attributes.size() != tree.arity()) {
    throw Error(fmt::format("expected {} attributes, got {}", tree.arity(),
                            attributes.size()));
  }
  const Node* node = &tree.root();
  ClassDistribution out;
  out.nodes_visited = 1;
  while (node->split) {
    auto it = node->branches.find(attributes[*node->split]);
    if (it == node->branches.end()) break;
    node = it->second.get();
    ++out.nodes_visited;
  }
  for (const auto& [label, n] : node->counts) out.support += n;
  for (const auto& [label, n] : node->counts) {
    out.probabilities[label] = static_cast<double>(n) / static_cast<double>(out.support);
  }
  return out;
}

std::set<SuperPeerId> relevant_sps(const DecisionTree& tree, const Query& q) {
  std::set<SuperPeerId> out;
  for (const auto& [sp, p] : classify(tree, q.components).probabilities) {
    if (p > 0.0) out.insert(sp);
  }
  return out;
}

SuperPeerId majority(const ClassCounts& counts) {
  if (counts.empty()) throw Error("majority of an empty distribution");
  auto best = counts.begin();
  for (auto it = counts.begin(); it != counts.end(); ++it) {
    if (it->second > best->second) best = it;
  }
  return best->first;
}

SuperPeerId predict(const DecisionTree& tree, std::span<const ExpertiseElement> attributes) {
  auto dist = classify(tree, attributes);
  auto best = dist.probabilities.begin();
  for (auto it = dist.probabilities.begin(); it != dist.probabilities.end(); ++it) {
    if (it->second > best->second) best = it;
  }
  return best->first;
}

double accuracy(const DecisionTree& tree, std::span<const Instance> instances) {
  if (instances.empty()) return 0.0;
  std::size_t correct = 0;
  for (const auto& inst : instances) {
    if (predict(tree, inst.attributes) == inst.label) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(instances.size());
}

std::string attribute_name(std::size_t index) {
  return fmt::format("composanteW{}", index + 1);
}

std::string render_tree(const DecisionTree& tree) {
  const auto& root = tree.root();
  if (!root.split) return leaf_suffix(root.counts) + "\n";
  std::string out;
  render_node(root, 0, out);
  return out;
}

}  // namespace sonsim
