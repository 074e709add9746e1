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

#ifndef SPARSIM_ALLOCATOR_HPP
#define SPARSIM_ALLOCATOR_HPP

#include "sparsim/partition.hpp"
#include "sparsim/types.hpp"

namespace sparsim {

// Per-iteration dynamic partition allocation. Every worker runs these
// functions on its replicated copies of the control state; determinism keeps
// the replicas in agreement without extra communication.

// Un-rotates counts gathered in rank order at iteration t-1 back into
// partition order: output[((t-1) mod n + i) mod n] = input[i], with the
// non-negative modulo so t = 0 is well defined.
PartialK rotate_to_partition_order(const PartialK& k_rank, long long t, int n);

struct AdjustStats {
  int moves = 0;  // block migrations performed
  int skips = 0;  // migrations refused by the min_blk guard
};

// Single left-to-right sweep over adjacent partition pairs. A pair whose
// counts sit on opposite sides of the per-partition mean by more than a
// factor alpha trades blk_move blocks, and k_move = blk_move * sz_blk *
// den_prev counts travel with them (rounded to an integer, clamped so no
// count goes negative). Donors never drop below min_blk blocks; such moves
// are skipped and counted. Touches only length-n arrays, so the cost is
// independent of n_g.
AdjustStats adjust_topology(PartitionTopology& topology, PartialK& k_part,
                            double alpha, Count blk_move, Count min_blk,
                            Index n_g);

struct Allocation {
  int partition = 0;
  IndexRange range;
};

// Cyclic assignment: rank `rank` gets partition (t % n + rank) % n. The last
// partition's range extends to n_g; over all ranks at fixed t the ranges
// cover [0, n_g) with no overlap.
Allocation allocate_partition(const PartitionTopology& topology, long long t,
                              int rank, Index n_g);

}  // namespace sparsim

#endif  // SPARSIM_ALLOCATOR_HPP
