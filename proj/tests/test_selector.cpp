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

#include <cmath>
#include <set>
#include <stdexcept>

#include <doctest.h>

#include "sparsim/allocator.hpp"
#include "sparsim/rng.hpp"
#include "sparsim/selector.hpp"

using namespace sparsim;

TEST_CASE("accumulate is componentwise e + eta * grad") {
  const std::vector<double> e{1.0, 2.0};
  const std::vector<double> grad{1.0, -2.0};
  CHECK(accumulate(e, 0.5, grad) == std::vector<double>{1.5, 1.0});

  const std::vector<double> zero{0.0, 0.0};
  CHECK(accumulate(zero, 0.5, grad) == std::vector<double>{0.5, -1.0});
  CHECK(accumulate(e, 0.5, zero) == e);
}

TEST_CASE("accumulate rejects mismatched lengths") {
  const std::vector<double> e{1.0, 2.0};
  const std::vector<double> grad{1.0};
  CHECK_THROWS_AS(accumulate(e, 1.0, grad), std::invalid_argument);
}

TEST_CASE("selection keeps |acc| >= delta inside the range, inclusive") {
  const std::vector<double> acc{0.1, -0.5, 0.3, 0.9};
  CHECK(select_indices(acc, 0, 4, 0.3) == std::vector<Index>{1, 2, 3});
  CHECK(select_indices(acc, 2, 4, 0.3) == std::vector<Index>{2, 3});
  CHECK(select_indices(acc, 0, 4, 10.0).empty());
}

TEST_CASE("clear_selected zeroes exactly the chosen indices") {
  std::vector<double> acc{1.0, 2.0, 3.0};
  clear_selected(acc, std::vector<Index>{1});
  CHECK(acc == std::vector<double>{1.0, 0.0, 3.0});

  std::vector<double> all{1.0, 2.0, 3.0};
  clear_selected(all, std::vector<Index>{0, 1, 2});
  CHECK(all == std::vector<double>{0.0, 0.0, 0.0});

  std::vector<double> none{1.0, 2.0, 3.0};
  clear_selected(none, std::vector<Index>{});
  CHECK(none == std::vector<double>{1.0, 2.0, 3.0});
}

TEST_CASE("error-feedback mass is conserved through select and clear") {
  rng::Stream gen(rng::derive_key({53}));
  for (int trial = 0; trial < 100; ++trial) {
    const Index n_g = 64 + static_cast<Index>(gen.next_u64() % 256);
    std::vector<double> e(n_g), grad(n_g);
    for (auto& v : e) v = gen.next_laplace(1.0);
    for (auto& v : grad) v = gen.next_laplace(1.0);
    const double eta = 0.1 + gen.next_unit();
    const double delta = 0.5 + gen.next_unit();

    const auto acc = accumulate(e, eta, grad);
    const auto idx = select_indices(acc, 0, n_g, delta);

    auto residual = acc;
    clear_selected(residual, idx);
    // contribution + next residual reconstructs acc at every coordinate
    std::set<Index> selected(idx.begin(), idx.end());
    for (Index j = 0; j < n_g; ++j) {
      const double contribution = selected.count(j) ? acc[j] : 0.0;
      CHECK(residual[j] + contribution == acc[j]);
    }
  }
}

TEST_CASE("selection shrinks monotonically as delta grows") {
  rng::Stream gen(rng::derive_key({59}));
  std::vector<double> acc(512);
  for (auto& v : acc) v = gen.next_laplace(1.0);
  std::vector<Index> prev = select_indices(acc, 0, 512, 0.1);
  for (double delta = 0.2; delta < 3.0; delta += 0.2) {
    const auto cur = select_indices(acc, 0, 512, delta);
    CHECK(cur.size() <= prev.size());
    CHECK(std::includes(prev.begin(), prev.end(), cur.begin(), cur.end()));
    prev = cur;
  }
}

TEST_CASE("disjoint ranges give duplicate-free unions across workers") {
  rng::Stream gen(rng::derive_key({61}));
  PartitionTopology topo;
  const int n = 4;
  topo.sz_blk = 37;
  topo.blk_part = {2, 3, 1, 2};
  topo.blk_pos = {0, 2, 5, 6};
  const Index n_g = topo.total_blocks() * topo.sz_blk + 11;

  std::vector<double> acc(n_g);
  for (auto& v : acc) v = gen.next_laplace(1.0);

  for (long long t = 0; t < 8; ++t) {
    std::vector<Index> all;
    for (int r = 0; r < n; ++r) {
      const auto range = allocate_partition(topo, t, r, n_g).range;
      const auto idx = select_indices(acc, range.st, range.end, 0.4);
      all.insert(all.end(), idx.begin(), idx.end());
    }
    std::sort(all.begin(), all.end());
    CHECK(std::adjacent_find(all.begin(), all.end()) == all.end());
  }
}

TEST_CASE("the density cap keeps the largest magnitudes, lower index on ties") {
  const std::vector<double> acc{0.9, 0.2, 0.9, 0.5, 0.9};
  const auto sel = select_indices_capped(acc, 0, 5, 0.1, Count{2});
  CHECK(sel.capped);
  CHECK(sel.indices == std::vector<Index>{0, 2});

  const auto uncapped = select_indices_capped(acc, 0, 5, 0.1, std::nullopt);
  CHECK(!uncapped.capped);
  CHECK(uncapped.indices.size() == 5);

  const auto roomy = select_indices_capped(acc, 0, 5, 0.1, Count{10});
  CHECK(!roomy.capped);
}
