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

#ifndef SPARSIM_PARTITION_HPP
#define SPARSIM_PARTITION_HPP

#include <string>

#include "sparsim/types.hpp"

namespace sparsim {

// Half-open index range of one partition in the gradient vector.
struct IndexRange {
  Index st = 0;
  Index end = 0;
  Index length() const { return end - st; }
  bool operator==(const IndexRange&) const = default;
};

// Builds the initial topology, run once before iteration 0. Blocks hold
// sz_blk = floor(n_g/n_b) gradients, rounded down to a multiple of 32 when
// that floor is at least 32; otherwise the unaligned floor is used and a
// note is written to `warning` if given. Blocks are spread as evenly as
// possible, the first n_b % n partitions taking one extra.
// Throws std::invalid_argument when any partition would get fewer than
// min_blk blocks or when n_b exceeds n_g.
PartitionTopology build_topology(Index n_g, Index n_b, int n, Count min_blk,
                                 std::string* warning = nullptr);

// Index range covered by partition `p`. The last partition absorbs the
// alignment remainder: its range extends to n_g.
IndexRange partition_range(const PartitionTopology& topology, int p, Index n_g);

}  // namespace sparsim

#endif  // SPARSIM_PARTITION_HPP
