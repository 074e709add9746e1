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

#include "sparsim/allocator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sparsim {

PartialK rotate_to_partition_order(const PartialK& k_rank, long long t, int n) {
  if (k_rank.ordering != KOrdering::RankOrder) {
    throw std::invalid_argument("rotate_to_partition_order expects rank order");
  }
  if (static_cast<int>(k_rank.counts.size()) != n) {
    throw std::invalid_argument("partial-k length mismatch");
  }
  PartialK out;
  out.ordering = KOrdering::PartitionOrder;
  out.counts.assign(n, 0);
  const long long shift = mod_floor(t - 1, n);
  for (int i = 0; i < n; ++i) {
    out.counts[(shift + i) % n] = k_rank.counts[i];
  }
  return out;
}

AdjustStats adjust_topology(PartitionTopology& topology, PartialK& k_part,
                            double alpha, Count blk_move, Count min_blk,
                            Index n_g) {
  if (k_part.ordering != KOrdering::PartitionOrder) {
    throw std::invalid_argument("adjust_topology expects partition order");
  }
  const int n = topology.partitions();
  AdjustStats stats;

  const Count total = k_part.sum();
  if (total <= 0) return stats;

  // Means of the previous iteration, fixed for the whole sweep.
  const double pk_prev = static_cast<double>(total) / n;
  const double den_prev = static_cast<double>(total) / static_cast<double>(n_g);
  const Count k_move = static_cast<Count>(
      std::llround(static_cast<double>(blk_move * topology.sz_blk) * den_prev));

  for (int i = 0; i + 1 < n; ++i) {
    const double det = static_cast<double>(k_part.counts[i]) / pk_prev;
    const double det2 = static_cast<double>(k_part.counts[i + 1]) / pk_prev;
    if (det > alpha && det2 < 1.0 / alpha) {
      // Left partition overloaded: shift blocks right.
      if (topology.blk_part[i] - blk_move < min_blk) {
        ++stats.skips;
        continue;
      }
      topology.blk_part[i] -= blk_move;
      topology.blk_part[i + 1] += blk_move;
      topology.blk_pos[i + 1] -= blk_move;
      const Count moved = std::min(k_move, k_part.counts[i]);
      k_part.counts[i] -= moved;
      k_part.counts[i + 1] += moved;
      ++stats.moves;
    } else if (det < 1.0 / alpha && det2 > alpha) {
      // Right partition overloaded: shift blocks left.
      if (topology.blk_part[i + 1] - blk_move < min_blk) {
        ++stats.skips;
        continue;
      }
      topology.blk_part[i] += blk_move;
      topology.blk_part[i + 1] -= blk_move;
      topology.blk_pos[i + 1] += blk_move;
      const Count moved = std::min(k_move, k_part.counts[i + 1]);
      k_part.counts[i] += moved;
      k_part.counts[i + 1] -= moved;
      ++stats.moves;
    }
  }
  return stats;
}

Allocation allocate_partition(const PartitionTopology& topology, long long t,
                              int rank, Index n_g) {
  const int n = topology.partitions();
  Allocation a;
  a.partition = static_cast<int>(mod_floor(mod_floor(t, n) + rank, n));
  a.range = partition_range(topology, a.partition, n_g);
  return a;
}

}  // namespace sparsim
