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

#include "sparsim/selector.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sparsim {

std::vector<double> accumulate(std::span<const double> e, double eta,
                               std::span<const double> grad) {
  if (e.size() != grad.size()) {
    throw std::invalid_argument("accumulate: length mismatch");
  }
  std::vector<double> acc(e.size());
  for (std::size_t j = 0; j < e.size(); ++j) {
    acc[j] = e[j] + eta * grad[j];
  }
  return acc;
}

std::vector<Index> select_indices(std::span<const double> acc, Index st,
                                  Index end, double delta) {
  std::vector<Index> idx;
  for (Index j = st; j < end; ++j) {
    if (std::fabs(acc[static_cast<std::size_t>(j)]) >= delta) idx.push_back(j);
  }
  return idx;
}

Selection select_indices_capped(std::span<const double> acc, Index st,
                                Index end, double delta,
                                std::optional<Count> cap) {
  Selection sel;
  sel.indices = select_indices(acc, st, end, delta);
  if (!cap || static_cast<Count>(sel.indices.size()) <= *cap) return sel;

  auto mag = [&acc](Index j) { return std::fabs(acc[static_cast<std::size_t>(j)]); };
  std::nth_element(sel.indices.begin(), sel.indices.begin() + *cap,
                   sel.indices.end(), [&](Index a, Index b) {
                     const double ma = mag(a), mb = mag(b);
                     return ma > mb || (ma == mb && a < b);
                   });
  sel.indices.resize(static_cast<std::size_t>(*cap));
  std::sort(sel.indices.begin(), sel.indices.end());
  sel.capped = true;
  return sel;
}

void clear_selected(std::vector<double>& acc, std::span<const Index> idx) {
  for (Index j : idx) acc[static_cast<std::size_t>(j)] = 0.0;
}

}  // namespace sparsim
