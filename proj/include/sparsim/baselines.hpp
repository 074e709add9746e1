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

#ifndef SPARSIM_BASELINES_HPP
#define SPARSIM_BASELINES_HPP

#include <span>
#include <vector>

#include "sparsim/types.hpp"

namespace sparsim {

// Exact top-k by magnitude over the full vector, ascending indices, ties
// broken toward the lower index. Sorting-based and deliberately exact: it is
// also the correctness oracle for threshold selection in tests. Throws when
// k is outside [1, acc.size()].
std::vector<Index> topk_select(std::span<const double> acc, Count k);

// Fixed-threshold selection over the full vector; the threshold is chosen
// before the run and never updated.
std::vector<Index> hard_threshold_select(std::span<const double> acc,
                                         double fixed_delta);

// The cyclic local top-k leader for iteration t.
inline int cltk_leader(long long t, int n) {
  return static_cast<int>(mod_floor(t, n));
}

}  // namespace sparsim

#endif  // SPARSIM_BASELINES_HPP
