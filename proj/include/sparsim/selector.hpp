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

#ifndef SPARSIM_SELECTOR_HPP
#define SPARSIM_SELECTOR_HPP

#include <optional>
#include <span>
#include <vector>

#include "sparsim/types.hpp"

namespace sparsim {

// acc[j] = e[j] + eta * grad[j]; throws on length mismatch.
std::vector<double> accumulate(std::span<const double> e, double eta,
                               std::span<const double> grad);

// All j in [st, end) with |acc[j]| >= delta, ascending, absolute indices.
// The comparison is inclusive: ties at exactly delta are selected.
std::vector<Index> select_indices(std::span<const double> acc, Index st,
                                  Index end, double delta);

struct Selection {
  std::vector<Index> indices;
  bool capped = false;
};

// Same predicate with an optional count ceiling: when more than `cap`
// indices qualify, the cap-many largest by |acc| are kept (ties go to the
// lower index) and `capped` is set. Non-standard safety valve, off unless a
// density cap is configured.
Selection select_indices_capped(std::span<const double> acc, Index st,
                                Index end, double delta,
                                std::optional<Count> cap);

// Zeroes acc at the given indices; the result is the next residual.
void clear_selected(std::vector<double>& acc, std::span<const Index> idx);

}  // namespace sparsim

#endif  // SPARSIM_SELECTOR_HPP
