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

#include "sparsim/collectives.hpp"

#include <algorithm>
#include <stdexcept>

namespace sparsim {

GatherResult all_gather(std::span<const SparseBatch> batches) {
  const int n = static_cast<int>(batches.size());
  GatherResult out;
  out.k_rank.ordering = KOrdering::RankOrder;
  out.k_rank.counts.resize(n);

  Count total = 0;
  for (int i = 0; i < n; ++i) {
    const auto& idx = batches[i].indices;
    if (!std::is_sorted(idx.begin(), idx.end()) ||
        std::adjacent_find(idx.begin(), idx.end()) != idx.end()) {
      throw std::invalid_argument("all_gather: batch indices not strictly ascending");
    }
    out.k_rank.counts[i] = batches[i].valid_count();
    out.m_t = std::max(out.m_t, out.k_rank.counts[i]);
    total += out.k_rank.counts[i];
  }

  Count padded = 0;
  for (Count k_i : out.k_rank.counts) padded += out.m_t - k_i;
  out.c_t = static_cast<Count>(n) * padded;
  out.f_t = total > 0 ? static_cast<double>(n) * static_cast<double>(out.m_t) /
                            static_cast<double>(total)
                      : 1.0;

  out.idx_global.reserve(static_cast<std::size_t>(total));
  for (int i = 0; i < n; ++i) {
    out.idx_global.insert(out.idx_global.end(), batches[i].indices.begin(),
                          batches[i].indices.end());
  }
  std::sort(out.idx_global.begin(), out.idx_global.end());
  const auto last = std::unique(out.idx_global.begin(), out.idx_global.end());
  out.duplicates = total - static_cast<Count>(last - out.idx_global.begin());
  out.idx_global.erase(last, out.idx_global.end());
  return out;
}

std::vector<double> all_reduce_sum(
    std::span<const std::vector<double>> contributions) {
  if (contributions.empty()) return {};
  std::vector<double> sum = contributions[0];
  for (std::size_t i = 1; i < contributions.size(); ++i) {
    if (contributions[i].size() != sum.size()) {
      throw std::invalid_argument("all_reduce_sum: length mismatch");
    }
    for (std::size_t j = 0; j < sum.size(); ++j) sum[j] += contributions[i][j];
  }
  return sum;
}

}  // namespace sparsim
