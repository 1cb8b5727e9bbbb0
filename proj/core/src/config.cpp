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

#include "sonsim/config.hpp"

#include <charconv>
#include <cmath>
#include <functional>
#include <map>

#include <fmt/format.h>

#include "sonsim/error.hpp"

namespace sonsim {

namespace {

std::string_view trim(std::string_view s) {
  auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <class T>
T parse_integer(std::string_view key, std::string_view value) {
  T out{};
  auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (value.empty() || ec != std::errc{} || p != value.data() + value.size()) {
    throw ConfigError(std::string(key), "expected a non-negative integer, got '" +
                                            std::string(value) + "'");
  }
  return out;
}

double parse_double(std::string_view key, std::string_view value) {
  double out = 0;
  auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (value.empty() || ec != std::errc{} || p != value.data() + value.size()) {
    throw ConfigError(std::string(key),
                      "expected a number, got '" + std::string(value) + "'");
  }
  return out;
}

std::uint32_t parse_hops(std::string_view key, std::string_view value) {
  if (value == "inf" || value == "unbounded") return kUnboundedHops;
  return parse_integer<std::uint32_t>(key, value);
}

using Setter = std::function<void(Config&, std::string_view, std::string_view)>;

template <class T>
Setter integer_field(T Config::*field) {
  return [field](Config& c, std::string_view k, std::string_view v) {
    c.*field = parse_integer<T>(k, v);
  };
}

Setter cost_field(double CostModel::*field) {
  return [field](Config& c, std::string_view k, std::string_view v) {
    c.costs.*field = parse_double(k, v);
  };
}

const std::map<std::string, Setter, std::less<>>& setters() {
  static const std::map<std::string, Setter, std::less<>> table = {
      {"seed", integer_field(&Config::seed)},
      {"np", integer_field(&Config::np)},
      {"nsp", integer_field(&Config::nsp)},
      {"sp_expertise_size", integer_field(&Config::sp_expertise_size)},
      {"tokens_per_domain", integer_field(&Config::tokens_per_domain)},
      {"friends_per_sp", integer_field(&Config::friends_per_sp)},
      {"dup_count", integer_field(&Config::dup_count)},
      {"min_peer_expertise", integer_field(&Config::min_peer_expertise)},
      {"n_components", integer_field(&Config::n_components)},
      {"queries_per_peer", integer_field(&Config::queries_per_peer)},
      {"eps_acc",
       [](Config& c, std::string_view k, std::string_view v) {
         c.eps_acc = parse_double(k, v);
       }},
      {"max_hops",
       [](Config& c, std::string_view k, std::string_view v) {
         c.max_hops = parse_hops(k, v);
       }},
      {"tau_trust", integer_field(&Config::tau_trust)},
      {"min_leaf", integer_field(&Config::min_leaf)},
      {"refresh_every", integer_field(&Config::refresh_every)},
      {"c_hop", cost_field(&CostModel::c_hop)},
      {"c_map", cost_field(&CostModel::c_map)},
      {"c_tree", cost_field(&CostModel::c_tree)},
      {"workload_mode",
       [](Config& c, std::string_view k, std::string_view v) {
         if (v == "fresh") {
           c.workload_mode = WorkloadMode::kFresh;
         } else if (v == "replay") {
           c.workload_mode = WorkloadMode::kReplay;
         } else {
           throw ConfigError(std::string(k), "expected 'fresh' or 'replay', got '" +
                                                 std::string(v) + "'");
         }
       }},
  };
  return table;
}

}  // namespace

void Config::validate() const {
  if (nsp < 1) throw ConfigError("nsp", "must be at least 1");
  if (np < nsp) throw ConfigError("np", "must be at least nsp");
  if (sp_expertise_size < 1) throw ConfigError("sp_expertise_size", "must be at least 1");
  if (tokens_per_domain < 2) throw ConfigError("tokens_per_domain", "must be at least 2");
  if (static_cast<std::uint64_t>(tokens_per_domain) * (tokens_per_domain - 1) <
      sp_expertise_size) {
    throw ConfigError("sp_expertise_size",
                      "exceeds the number of distinct couples per domain");
  }
  if (friends_per_sp >= nsp && friends_per_sp > 0) {
    throw ConfigError("friends_per_sp", "must be smaller than nsp");
  }
  if (dup_count < 1) throw ConfigError("dup_count", "must be at least 1");
  if (dup_count > sp_expertise_size) {
    throw ConfigError("dup_count", "must not exceed sp_expertise_size");
  }
  if (min_peer_expertise < 1 || min_peer_expertise > sp_expertise_size) {
    throw ConfigError("min_peer_expertise", "must lie in [1, sp_expertise_size]");
  }
  if (n_components < 1) throw ConfigError("n_components", "must be at least 1");
  if (!(eps_acc >= 0.0 && eps_acc <= 1.0)) {
    throw ConfigError("eps_acc", "must lie in [0, 1]");
  }
  if (tau_trust < 1) throw ConfigError("tau_trust", "must be at least 1");
  if (min_leaf < 1) throw ConfigError("min_leaf", "must be at least 1");
  if (!(costs.c_hop >= 0.0)) throw ConfigError("c_hop", "must be non-negative");
  if (!(costs.c_map >= 0.0)) throw ConfigError("c_map", "must be non-negative");
  if (!(costs.c_tree >= 0.0)) throw ConfigError("c_tree", "must be non-negative");
}

std::string to_string(WorkloadMode mode) {
  return mode == WorkloadMode::kFresh ? "fresh" : "replay";
}

std::string to_text(const Config& c) {
  std::string out;
  auto line = [&out](std::string_view key, const auto& value) {
    out += fmt::format("{} = {}\n", key, value);
  };
  line("seed", c.seed);
  line("np", c.np);
  line("nsp", c.nsp);
  line("sp_expertise_size", c.sp_expertise_size);
  line("tokens_per_domain", c.tokens_per_domain);
  line("friends_per_sp", c.friends_per_sp);
  line("dup_count", c.dup_count);
  line("min_peer_expertise", c.min_peer_expertise);
  line("n_components", c.n_components);
  line("queries_per_peer", c.queries_per_peer);
  line("eps_acc", c.eps_acc);
  if (c.max_hops == kUnboundedHops) {
    line("max_hops", "inf");
  } else {
    line("max_hops", c.max_hops);
  }
  line("tau_trust", c.tau_trust);
  line("min_leaf", c.min_leaf);
  line("refresh_every", c.refresh_every);
  line("c_hop", c.costs.c_hop);
  line("c_map", c.costs.c_map);
  line("c_tree", c.costs.c_tree);
  line("workload_mode", to_string(c.workload_mode));
  return out;
}

void apply_setting(Config& config, std::string_view key, std::string_view value) {
  auto it = setters().find(key);
  if (it == setters().end()) {
    throw ConfigError(std::string(key), "unknown configuration key");
  }
  it->second(config, key, trim(value));
}

Config parse_config(std::string_view text, Config base) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    auto nl = text.find('\n');
    auto line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);

    if (auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError("expected 'key = value'", line_no);
    }
    apply_setting(base, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return base;
}

}  // namespace sonsim
