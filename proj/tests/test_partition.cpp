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

#include <stdexcept>
#include <string>

#include <doctest.h>

#include "sparsim/partition.hpp"
#include "sparsim/rng.hpp"

using namespace sparsim;

TEST_CASE("even split with aligned blocks") {
  const auto topo = build_topology(4096, 8, 4, 1);
  CHECK(topo.sz_blk == 512);
  CHECK(topo.blk_part == std::vector<Count>{2, 2, 2, 2});
  CHECK(topo.blk_pos == std::vector<Index>{0, 2, 4, 6});
}

TEST_CASE("uneven split rounds the block size down to a multiple of 32") {
  // 4096/5 = 819 -> 819 - 819 % 32 = 800; 5 blocks over 2 partitions -> 3+2.
  const auto topo = build_topology(4096, 5, 2, 1);
  CHECK(topo.sz_blk == 800);
  CHECK(topo.blk_part == std::vector<Count>{3, 2});
  CHECK(topo.blk_pos == std::vector<Index>{0, 3});
}

TEST_CASE("exact 32-sized blocks pass through unrounded") {
  const auto topo = build_topology(64, 2, 2, 1);
  CHECK(topo.sz_blk == 32);
  CHECK(topo.blk_part == std::vector<Count>{1, 1});
  CHECK(topo.blk_pos == std::vector<Index>{0, 1});
}

TEST_CASE("small quotient falls back to unaligned blocks with a warning") {
  std::string warning;
  const auto topo = build_topology(64, 4, 2, 1, &warning);
  CHECK(topo.sz_blk == 16);
  CHECK(!warning.empty());
}

TEST_CASE("rejects partitions that would fall below min_blk") {
  CHECK_THROWS_AS(build_topology(4096, 8, 4, 3), std::invalid_argument);
  CHECK_THROWS_AS(build_topology(4096, 2, 4, 1), std::invalid_argument);
  CHECK_THROWS_AS(build_topology(16, 32, 2, 1), std::invalid_argument);  // n_b > n_g
}

TEST_CASE("topology invariants hold across random shapes") {
  rng::Stream gen(rng::derive_key({2024}));
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + static_cast<int>(gen.next_u64() % 12);
    const Count min_blk = 1 + static_cast<Count>(gen.next_u64() % 3);
    const Index n_b =
        static_cast<Index>(n) * min_blk + static_cast<Index>(gen.next_u64() % 64);
    const Index n_g = n_b * (1 + static_cast<Index>(gen.next_u64() % 4096));

    const auto topo = build_topology(n_g, n_b, n, min_blk);

    CHECK(topo.total_blocks() == n_b);
    CHECK(topo.blk_pos[0] == 0);
    for (int i = 1; i < n; ++i) {
      CHECK(topo.blk_pos[i] == topo.blk_pos[i - 1] + topo.blk_part[i - 1]);
    }
    for (int i = 0; i < n; ++i) CHECK(topo.blk_part[i] >= min_blk);
    if (n_g / n_b >= 32) CHECK(topo.sz_blk % 32 == 0);
    CHECK(topo.sz_blk >= 1);

    // Ranges tile [0, n_g): contiguous, disjoint, full coverage with the
    // remainder absorbed by the last partition.
    Index cursor = 0;
    for (int p = 0; p < n; ++p) {
      const auto range = partition_range(topo, p, n_g);
      CHECK(range.st == cursor);
      CHECK(range.end > range.st);
      cursor = range.end;
    }
    CHECK(cursor == n_g);

    // Bounded remainder.
    const Index tail = n_g - n_b * topo.sz_blk;
    CHECK(tail >= 0);
    CHECK(tail < topo.sz_blk + 32 * n_b);
  }
}
