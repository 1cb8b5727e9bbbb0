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
#include <limits>
#include <string>
#include <string_view>

namespace sonsim {

// Time units charged per overlay message, per capacity evaluation and per
// decision-tree node visited.
struct CostModel {
  double c_hop = 10.0;
  double c_map = 1.0;
  double c_tree = 0.1;

  friend bool operator==(const CostModel&, const CostModel&) = default;
};

enum class WorkloadMode { kFresh, kReplay };

inline constexpr std::uint32_t kUnboundedHops =
    std::numeric_limits<std::uint32_t>::max();

struct Config {
  std::uint64_t seed = 1;
  std::uint32_t np = 300;
  std::uint32_t nsp = 10;
  std::uint32_t sp_expertise_size = 48;
  std::uint32_t tokens_per_domain = 8;
  std::uint32_t friends_per_sp = 1;
  std::uint32_t dup_count = 2;
  std::uint32_t min_peer_expertise = 4;
  std::uint32_t n_components = 4;
  std::uint32_t queries_per_peer = 5;
  double eps_acc = 0.5;
  std::uint32_t max_hops = 1;  // kUnboundedHops floods the friend graph
  std::uint32_t tau_trust = 2;
  std::uint32_t min_leaf = 2;
  std::uint32_t refresh_every = 0;  // 0: static knowledge, never retrain
  CostModel costs;
  WorkloadMode workload_mode = WorkloadMode::kFresh;

  // Throws ConfigError naming the offending field.
  void validate() const;

  friend bool operator==(const Config&, const Config&) = default;
};

std::string to_string(WorkloadMode mode);

// key = value lines; '#' starts a comment. Keys are the field names above,
// with the cost coefficients spelled c_hop, c_map and c_tree.
std::string to_text(const Config& config);

// Parses `text` on top of `base`. Unknown keys and malformed values raise
// ConfigError; the result is not validated.
Config parse_config(std::string_view text, Config base = {});

// Applies a single key/value pair; used for command-line overrides.
void apply_setting(Config& config, std::string_view key, std::string_view value);

}  // namespace sonsim
