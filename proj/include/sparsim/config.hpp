// Copyright 2026 The sparsim Authors
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

#ifndef SPARSIM_CONFIG_HPP
#define SPARSIM_CONFIG_HPP

#include <cstdint>
#include <optional>

#include "sparsim/types.hpp"

namespace sparsim {

// Run-wide sparsifier parameters. `k` is derived once by validate() as
// round(d * n_g); everything downstream consumes k and never re-derives it
// from d.
struct SparsifierConfig {
  int n = 4;                         // worker count
  Index n_g = 1'000'000;             // gradients in the model
  Index n_b = 256;                   // blocks in the gradient vector
  double d = 0.001;                  // target density in (0, 1]
  Count k = 0;                       // round(d * n_g), set by validate()
  std::optional<double> delta0;      // initial threshold; empty = estimate at t=0
  double alpha = 1.25;               // imbalance trigger ratio (> 1)
  double beta = 1.25;                // density band ratio (> 1)
  double gamma = 0.02;               // threshold scaling step in (0, 1)
  Count blk_move = 1;                // blocks moved per adjustment
  Count min_blk = 2;                 // minimum blocks a partition may keep
  double eta = 1.0;                  // learning rate
  std::uint64_t seed = 42;
  std::optional<double> max_density_cap;  // optional per-partition safety ceiling

  bool operator==(const SparsifierConfig&) const = default;
};

// Returns the config with k filled in, or throws std::invalid_argument
// naming the first violated invariant.
SparsifierConfig validate(SparsifierConfig cfg);

// Default block count when the user does not set one.
inline Index default_block_count(int n) { return 64 * static_cast<Index>(n); }

}  // namespace sparsim

#endif  // SPARSIM_CONFIG_HPP
