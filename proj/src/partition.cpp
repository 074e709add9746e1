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

#include "sparsim/partition.hpp"

#include <algorithm>
#include <stdexcept>

namespace sparsim {

PartitionTopology build_topology(Index n_g, Index n_b, int n, Count min_blk,
                                 std::string* warning) {
  if (n < 1) throw std::invalid_argument("worker count out of range");
  if (n_b < 1 || n_b > n_g) throw std::invalid_argument("n_b out of range");

  const Index temp = n_g / n_b;
  Index sz_blk;
  if (temp >= 32) {
    sz_blk = temp - temp % 32;
  } else {
    // 32-alignment targets warp-sized memory access; with tiny blocks it
    // would zero out the block size, so fall back to the raw quotient.
    sz_blk = std::max<Index>(temp, 1);
    if (warning) {
      *warning = "block size " + std::to_string(sz_blk) +
                 " below 32-element alignment; using unaligned blocks";
    }
  }

  const Count quotient = n_b / n;
  const Count remainder = n_b % n;
  if (quotient < min_blk) {
    throw std::invalid_argument("partition would hold fewer than min_blk blocks");
  }

  PartitionTopology topo;
  topo.sz_blk = sz_blk;
  topo.blk_part.resize(n);
  topo.blk_pos.assign(n, 0);
  for (int i = 0; i < n; ++i) {
    topo.blk_part[i] = quotient + (i < remainder ? 1 : 0);
  }
  for (int i = 1; i < n; ++i) {
    topo.blk_pos[i] = topo.blk_pos[i - 1] + topo.blk_part[i - 1];
  }
  return topo;
}

IndexRange partition_range(const PartitionTopology& topology, int p, Index n_g) {
  const int n = topology.partitions();
  IndexRange range;
  range.st = topology.blk_pos[p] * topology.sz_blk;
  range.end = p == n - 1
                  ? n_g
                  : (topology.blk_pos[p] + topology.blk_part[p]) * topology.sz_blk;
  return range;
}

}  // namespace sparsim
