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

#include "sparsim/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "sparsim/selector.hpp"

namespace sparsim {

std::vector<Index> topk_select(std::span<const double> acc, Count k) {
  const auto n_g = static_cast<Count>(acc.size());
  if (k < 1 || k > n_g) throw std::invalid_argument("topk_select: k out of range");

  std::vector<Index> idx(static_cast<std::size_t>(n_g));
  std::iota(idx.begin(), idx.end(), Index{0});
  auto mag = [&acc](Index j) { return std::fabs(acc[static_cast<std::size_t>(j)]); };
  std::nth_element(idx.begin(), idx.begin() + k, idx.end(),
                   [&](Index a, Index b) {
                     const double ma = mag(a), mb = mag(b);
                     return ma > mb || (ma == mb && a < b);
                   });
  idx.resize(static_cast<std::size_t>(k));
  std::sort(idx.begin(), idx.end());
  return idx;
}

std::vector<Index> hard_threshold_select(std::span<const double> acc,
                                         double fixed_delta) {
  return select_indices(acc, 0, static_cast<Index>(acc.size()), fixed_delta);
}

}  // namespace sparsim
