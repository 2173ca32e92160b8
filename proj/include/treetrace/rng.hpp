// Copyright 2026 The treetrace Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
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

namespace treetrace {

// Portable random stream. The engine is std::mt19937_64, whose output sequence
// is fixed by the C++ standard; every derived quantity (uniform doubles,
// bounded integers, shuffles) is computed here rather than through the
// implementation-defined <random> distributions, so a seed reproduces the same
// draws on every toolchain.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  bool bernoulli(double probability) { return uniform() < probability; }

  // Uniform in [0, bound); bound must be positive.
  std::uint64_t below(std::uint64_t bound);

 private:
  std::mt19937_64 engine_;
};

// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::string_view bytes);

// Seed of one experiment trial: FNV-1a over the decimal text
// "master:grid:trial".
std::uint64_t trial_seed(std::uint64_t master_seed, std::size_t grid_index,
                         std::size_t trial_index);

}  // namespace treetrace
