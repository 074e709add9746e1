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

#include <doctest.h>

#include "sparsim/collectives.hpp"
#include "sparsim/rng.hpp"

using namespace sparsim;

namespace {

SparseBatch batch_of(std::vector<Index> idx) {
  SparseBatch b;
  b.values.assign(idx.size(), 1.0);
  b.indices = std::move(idx);
  return b;
}

}  // namespace

TEST_CASE("gather pads every worker to the largest payload") {
  const std::vector<SparseBatch> batches{batch_of({1, 4, 9}), batch_of({2})};
  const auto g = all_gather(batches);
  CHECK(g.k_rank.counts == std::vector<Count>{3, 1});
  CHECK(g.m_t == 3);
  CHECK(g.c_t == 4);  // n * ((3-3) + (3-1))
  CHECK(g.f_t == doctest::Approx(1.5));
  CHECK(g.idx_global == std::vector<Index>{1, 2, 4, 9});
  CHECK(g.duplicates == 0);
  CHECK(g.k_prime() == 4);
}

TEST_CASE("perfect balance is the padding-free best case") {
  std::vector<SparseBatch> batches;
  for (int r = 0; r < 4; ++r) {
    batches.push_back(batch_of({r * 10 + 0, r * 10 + 1, r * 10 + 2,
                                r * 10 + 3, r * 10 + 4, r * 10 + 5,
                                r * 10 + 6, r * 10 + 7, r * 10 + 8,
                                r * 10 + 9}));
  }
  const auto g = all_gather(batches);
  CHECK(g.c_t == 0);
  CHECK(g.f_t == doctest::Approx(1.0));
}

TEST_CASE("one heavy worker inflates the traffic ratio") {
  std::vector<SparseBatch> batches;
  std::vector<Index> heavy(20);
  for (int i = 0; i < 20; ++i) heavy[i] = i;
  batches.push_back(batch_of(heavy));
  for (int r = 1; r < 4; ++r) {
    std::vector<Index> idx(10);
    for (int i = 0; i < 10; ++i) idx[i] = 100 * r + i;
    batches.push_back(batch_of(idx));
  }
  const auto g = all_gather(batches);
  CHECK(g.m_t == 20);
  CHECK(g.f_t == doctest::Approx(80.0 / 50.0));
  CHECK(g.c_t == 120);  // 4 * (0 + 10 + 10 + 10)
}

TEST_CASE("duplicates are merged out of the union but charged to traffic") {
  const std::vector<SparseBatch> batches{batch_of({1, 2, 3}), batch_of({2, 3, 7})};
  const auto g = all_gather(batches);
  CHECK(g.idx_global == std::vector<Index>{1, 2, 3, 7});
  CHECK(g.duplicates == 2);
  CHECK(g.k_prime() == 6);  // every copy counts
}

TEST_CASE("gather rejects unsorted or repeated batch indices") {
  CHECK_THROWS_AS(all_gather(std::vector<SparseBatch>{batch_of({3, 1})}),
                  std::invalid_argument);
  CHECK_THROWS_AS(all_gather(std::vector<SparseBatch>{batch_of({1, 1})}),
                  std::invalid_argument);
}

TEST_CASE("f_t is 1 exactly when all payloads are equal") {
  rng::Stream gen(rng::derive_key({73}));
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(gen.next_u64() % 6);
    std::vector<SparseBatch> batches;
    std::vector<Count> sizes(n);
    bool all_equal = true;
    for (int r = 0; r < n; ++r) {
      sizes[r] = 1 + static_cast<Count>(gen.next_u64() % 8);
      all_equal = all_equal && sizes[r] == sizes[0];
      std::vector<Index> idx(sizes[r]);
      for (Count i = 0; i < sizes[r]; ++i) idx[i] = 100 * r + i;
      batches.push_back(batch_of(idx));
    }
    const auto g = all_gather(batches);
    CHECK(g.f_t >= 1.0);
    CHECK((g.f_t == doctest::Approx(1.0)) == all_equal);
  }
}

TEST_CASE("empty gather is the degenerate best case") {
  const std::vector<SparseBatch> batches{SparseBatch{}, SparseBatch{}};
  const auto g = all_gather(batches);
  CHECK(g.k_prime() == 0);
  CHECK(g.m_t == 0);
  CHECK(g.c_t == 0);
  CHECK(g.f_t == 1.0);
  CHECK(g.idx_global.empty());
}

TEST_CASE("all-reduce sums elementwise in rank order") {
  const std::vector<std::vector<double>> two{{1.0, 2.0}, {3.0, 4.0}};
  CHECK(all_reduce_sum(two) == std::vector<double>{4.0, 6.0});

  const std::vector<std::vector<double>> one{{5.0, -1.0}};
  CHECK(all_reduce_sum(one) == std::vector<double>{5.0, -1.0});

  const std::vector<std::vector<double>> cancel{{1.0, -2.0}, {-1.0, 2.0}};
  CHECK(all_reduce_sum(cancel) == std::vector<double>{0.0, 0.0});
}

TEST_CASE("all-reduce rejects ragged contributions") {
  const std::vector<std::vector<double>> ragged{{1.0, 2.0}, {3.0}};
  CHECK_THROWS_AS(all_reduce_sum(ragged), std::invalid_argument);
}

TEST_CASE("broadcast hands every rank an identical copy") {
  const std::vector<Index> payload{3, 1, 4};
  const auto copies = broadcast(payload, 4);
  REQUIRE(copies.size() == 4);
  for (const auto& c : copies) CHECK(c == payload);

  const auto empty = broadcast(std::vector<Index>{}, 3);
  for (const auto& c : empty) CHECK(c.empty());

  CHECK(broadcast(payload, 1).size() == 1);
}
