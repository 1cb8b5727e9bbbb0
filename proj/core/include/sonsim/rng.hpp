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
#include <random>
#include <string_view>
#include <vector>

namespace sonsim {

// Seeded generator with platform-independent draws. std::mt19937_64's
// output sequence is fixed by the standard; the distributions in <random>
// are not, so bounded draws are done here by rejection.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform in [0, bound). bound must be > 0.
  std::uint64_t uniform(std::uint64_t bound);

  // Uniform in [lo, hi], inclusive.
  std::uint64_t uniform_between(std::uint64_t lo, std::uint64_t hi);

  // k distinct indices out of [0, n), in draw order.
  std::vector<std::size_t> sample(std::size_t n, std::size_t k);

 private:
  std::mt19937_64 engine_;
};

// Named sub-stream of a root seed (splitmix64 over root ^ fnv1a(name)).
// Changing how many draws one stage makes never perturbs another stage.
std::uint64_t derive_seed(std::uint64_t root, std::string_view stream);

}  // namespace sonsim
