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

#ifndef SPARSIM_TYPES_HPP
#define SPARSIM_TYPES_HPP

#include <cstdint>
#include <numeric>
#include <optional>
#include <vector>

namespace sparsim {

using Index = std::int64_t;
using Count = std::int64_t;

// Non-negative (mathematical) modulo. Iteration counters are rotated with
// (t - 1) % n, which is evaluated at t = 0.
inline long long mod_floor(long long a, long long n) {
  return ((a % n) + n) % n;
}

// Block-based layout of the gradient vector: n contiguous, non-overlapping
// partitions, each made of whole blocks of sz_blk gradients.
struct PartitionTopology {
  Index sz_blk = 0;                // gradients per block
  std::vector<Count> blk_part;     // blocks per partition, length n
  std::vector<Index> blk_pos;      // first block index per partition, length n

  int partitions() const { return static_cast<int>(blk_part.size()); }
  Count total_blocks() const {
    return std::accumulate(blk_part.begin(), blk_part.end(), Count{0});
  }
  bool operator==(const PartitionTopology&) const = default;
};

enum class KOrdering { RankOrder, PartitionOrder };

// Per-worker (rank order) or per-partition (partition order) selected counts.
struct PartialK {
  std::vector<Count> counts;
  KOrdering ordering = KOrdering::RankOrder;

  Count sum() const {
    return std::accumulate(counts.begin(), counts.end(), Count{0});
  }
  bool operator==(const PartialK&) const = default;
};

// One worker's selected payload for one iteration.
struct SparseBatch {
  std::vector<Index> indices;      // absolute gradient indices, strictly ascending
  std::vector<double> values;      // accumulated gradients at `indices`
  Index padded_length = 0;         // m_t, stamped after the gather

  Count valid_count() const { return static_cast<Count>(indices.size()); }
};

// One worker's full replica: residual and model plus the replicated control
// state. After every completed iteration x, delta, k_t and topology must be
// bit-identical across workers.
struct WorkerState {
  int rank = 0;
  std::vector<double> x;           // model, length n_g
  std::vector<double> e;           // residual e_{i,t}, length n_g
  double delta = 0.0;              // selection threshold
  PartialK k_t;                    // last gathered counts, rank order
  PartitionTopology topology;
};

// Per-iteration ledger row. The first ten fields form the CSV schema; the
// rest are diagnostics kept in memory for summaries and tests.
struct IterationRecord {
  long long t = 0;
  Count k_prime = 0;               // sum of gathered counts
  double density = 0.0;            // k' / n_g
  double eps = 0.0;                // |k - k'| / n_g
  Count m_t = 0;                   // max gathered count
  Count c_t = 0;                   // n * sum(m_t - k_i)
  double f_t = 1.0;                // n * m_t / k' (1 when k' = 0)
  double global_err = 0.0;         // (1/n) * sum_i ||e_{i,t}||_2, entering state
  double delta = 0.0;              // threshold used this iteration (0 if none)
  std::optional<double> loss;      // task runs only, evaluated at x_{t+1}

  Count duplicates = 0;            // indices gathered more than once
  Count union_count = 0;           // |idx_global|
  std::vector<Count> k_rank;       // gathered counts, rank order
  int adjust_moves = 0;
  int adjust_skips = 0;
  int cap_hits = 0;                // workers whose selection hit the density cap
  int idle_workers = 0;            // n - 1 under cltk, else 0
};

}  // namespace sparsim

#endif  // SPARSIM_TYPES_HPP
