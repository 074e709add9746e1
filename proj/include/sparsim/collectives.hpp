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

#ifndef SPARSIM_COLLECTIVES_HPP
#define SPARSIM_COLLECTIVES_HPP

#include <span>
#include <vector>

#include "sparsim/types.hpp"

namespace sparsim {

// Simulated collectives. Traffic is counted, not timed: payloads are
// index+value pairs, and the padding metrics follow element counts, so the
// ratios are unit-free. Reductions run in ascending rank order so
// floating-point results are bit-reproducible.

struct GatherResult {
  std::vector<Index> idx_global;  // ascending union of all selected indices
  PartialK k_rank;                // per-worker valid counts, rank order
  Count m_t = 0;                  // max valid count
  Count c_t = 0;                  // n * sum_i (m_t - k_i), padded elements
  double f_t = 1.0;               // n * m_t / k', 1 when k' = 0
  Count duplicates = 0;           // indices contributed by more than one worker

  Count k_prime() const { return k_rank.sum(); }
};

// All-gather of variable-length sparse batches with zero-padding to the
// largest payload. Duplicate indices are merged out of idx_global but every
// copy is charged: they show up in `duplicates` and in k_rank. Batches must
// have strictly ascending indices.
GatherResult all_gather(std::span<const SparseBatch> batches);

// Elementwise sum, rank 0 upward; throws on length mismatch.
std::vector<double> all_reduce_sum(
    std::span<const std::vector<double>> contributions);

// One payload copied to every rank.
template <typename T>
std::vector<T> broadcast(const T& payload, int n_ranks) {
  return std::vector<T>(static_cast<std::size_t>(n_ranks), payload);
}

}  // namespace sparsim

#endif  // SPARSIM_COLLECTIVES_HPP
