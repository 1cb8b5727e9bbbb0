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

#include "sonsim/rng.hpp"

#include <numeric>
#include <stdexcept>

namespace sonsim {

std::uint64_t Rng::uniform(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("Rng::uniform: bound must be > 0");
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    std::uint64_t r = engine_();
    if (r >= threshold) return r % bound;
  }
}

std::uint64_t Rng::uniform_between(std::uint64_t lo, std::uint64_t hi) {
  if (hi < lo) throw std::invalid_argument("Rng::uniform_between: hi < lo");
  if (lo == 0 && hi == UINT64_MAX) return engine_();
  return lo + uniform(hi - lo + 1);
}

std::vector<std::size_t> Rng::sample(std::size_t n, std::size_t k) {
  if (k > n) throw std::invalid_argument("Rng::sample: k > n");
  std::vector<std::size_t> pool(n);
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  for (std::size_t i = 0; i < k; ++i) {
    auto j = i + static_cast<std::size_t>(uniform(n - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  return pool;
}

std::uint64_t derive_seed(std::uint64_t root, std::string_view stream) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : stream) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::uint64_t z = root ^ h;
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace sonsim
