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

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sonsim/ids.hpp"
#include "sonsim/model.hpp"

namespace sonsim {

// One training row: the query components (attribute composanteW<i+1> is
// attributes[i]) and the super-peer that answered.
struct Instance {
  std::vector<ExpertiseElement> attributes;
  SuperPeerId label;

  friend bool operator==(const Instance&, const Instance&) = default;
};

using ClassCounts = std::map<SuperPeerId, std::uint64_t>;

struct ClassDistribution {
  std::map<SuperPeerId, double> probabilities;
  std::uint64_t support = 0;
  std::uint64_t nodes_visited = 0;

  double operator[](SuperPeerId sp) const {
    auto it = probabilities.find(sp);
    return it == probabilities.end() ? 0.0 : it->second;
  }
};

// Immutable, cheaply copyable handle to a categorical decision tree.
// Every node keeps the class counts of the training rows that reached it;
// those counts are the leaf prediction and, at internal nodes, the
// fallback for attribute values never seen there.
class DecisionTree {
 public:
  struct Node {
    ClassCounts counts;
    std::optional<std::size_t> split;  // tested attribute; empty at leaves
    std::map<ExpertiseElement, std::shared_ptr<const Node>> branches;
  };

  static DecisionTree leaf(ClassCounts counts, std::size_t arity);
  static DecisionTree internal(std::size_t attribute, ClassCounts counts,
                               std::vector<std::pair<ExpertiseElement, DecisionTree>> children,
                               std::size_t arity);

  const Node& root() const noexcept { return *root_; }
  std::size_t arity() const noexcept { return arity_; }
  std::size_t depth() const;

 private:
  DecisionTree(std::shared_ptr<const Node> root, std::size_t arity)
      : root_(std::move(root)), arity_(arity) {}

  std::shared_ptr<const Node> root_;
  std::size_t arity_ = 0;

  friend DecisionTree build_tree(std::span<const Instance>,
                                 std::vector<std::size_t>, std::size_t);
};

// Shannon entropy in bits. Throws when the counts are empty or all zero.
double entropy(std::span<const std::uint64_t> counts);
double entropy(const ClassCounts& counts);

double information_gain(std::span<const Instance> instances, std::size_t attribute);

// Information gain over split information; 0 when the attribute takes a
// single value.
double gain_ratio(std::span<const Instance> instances, std::size_t attribute);

// Unpruned induction. A node becomes a leaf when it is class-pure, when
// fewer than min_leaf rows reach it, or when no remaining attribute takes
// two distinct values there; otherwise it splits on the remaining
// attribute with the highest gain ratio (lowest index on ties).
DecisionTree build_tree(std::span<const Instance> instances,
                        std::vector<std::size_t> attributes, std::size_t min_leaf);

// All attributes available.
DecisionTree build_tree(std::span<const Instance> instances, std::size_t min_leaf);

ClassDistribution classify(const DecisionTree& tree,
                           std::span<const ExpertiseElement> attributes);

// Super-peers with nonzero predicted probability for the query.
std::set<SuperPeerId> relevant_sps(const DecisionTree& tree, const Query& q);

// Most probable class (lowest id on ties).
SuperPeerId majority(const ClassCounts& counts);
SuperPeerId predict(const DecisionTree& tree, std::span<const ExpertiseElement> attributes);

// Fraction of rows whose predicted class equals their label.
double accuracy(const DecisionTree& tree, std::span<const Instance> instances);

std::string attribute_name(std::size_t index);  // "composanteW<index+1>"

// Text layout of a J48 model: one line per tested value, "| " per level
// of nesting, leaves as ": CLASS (total)" or ": CLASS (total/misclassified)".
std::string render_tree(const DecisionTree& tree);

// ARFF with nominal attributes composanteW1..Wn and a trailing class
// attribute. `arity` is only consulted when `instances` is empty.
std::string arff_export(std::span<const Instance> instances,
                        std::string_view relation, std::size_t arity = 0);

struct ArffDataset {
  std::string relation;
  std::size_t arity = 0;
  std::vector<Instance> instances;
};

// Throws ParseError with the offending line number.
ArffDataset arff_import(std::string_view text);

}  // namespace sonsim
