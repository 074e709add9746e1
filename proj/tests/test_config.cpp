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

#include "sparsim/config.hpp"

using namespace sparsim;

namespace {

SparsifierConfig small_ok() {
  SparsifierConfig cfg;
  cfg.n = 2;
  cfg.n_g = 64;
  cfg.n_b = 2;
  cfg.d = 0.5;
  cfg.min_blk = 1;
  return cfg;
}

}  // namespace

TEST_CASE("validate accepts a consistent config and derives k") {
  const auto cfg = validate(small_ok());
  CHECK(cfg.k == 32);
}

TEST_CASE("validate names the first violated invariant") {
  SUBCASE("too few blocks for min_blk") {
    auto cfg = small_ok();
    cfg.n = 4;
    cfg.n_b = 2;
    CHECK_THROWS_WITH_AS(validate(cfg), "n_b < n*min_blk", std::invalid_argument);
  }
  SUBCASE("zero density") {
    auto cfg = small_ok();
    cfg.d = 0.0;
    CHECK_THROWS_WITH_AS(validate(cfg), "density out of range",
                         std::invalid_argument);
  }
  SUBCASE("density above one") {
    auto cfg = small_ok();
    cfg.d = 1.5;
    CHECK_THROWS_WITH_AS(validate(cfg), "density out of range",
                         std::invalid_argument);
  }
  SUBCASE("per-worker share below one") {
    auto cfg = small_ok();
    cfg.n_g = 400;
    cfg.d = 0.0025;  // k = 1 < n = 2
    CHECK_THROWS_WITH_AS(validate(cfg), "k < n", std::invalid_argument);
  }
  SUBCASE("more blocks than gradients") {
    auto cfg = small_ok();
    cfg.n_b = 128;
    CHECK_THROWS_WITH_AS(validate(cfg), "n_b > n_g", std::invalid_argument);
  }
  SUBCASE("alpha must exceed one") {
    auto cfg = small_ok();
    cfg.alpha = 1.0;
    CHECK_THROWS_WITH_AS(validate(cfg), "alpha out of range",
                         std::invalid_argument);
  }
  SUBCASE("gamma bounds") {
    auto cfg = small_ok();
    cfg.gamma = 1.0;
    CHECK_THROWS_WITH_AS(validate(cfg), "gamma out of range",
                         std::invalid_argument);
  }
  SUBCASE("delta0 must be positive when given") {
    auto cfg = small_ok();
    cfg.delta0 = 0.0;
    CHECK_THROWS_WITH_AS(validate(cfg), "delta0 out of range",
                         std::invalid_argument);
  }
}

TEST_CASE("k is round(d * n_g), half away from zero") {
  auto cfg = small_ok();
  cfg.n_g = 1000;
  cfg.d = 0.0015;
  CHECK(validate(cfg).k == 2);

  cfg.n_g = 1'000'000;
  cfg.d = 0.001;
  CHECK(validate(cfg).k == 1000);
}

TEST_CASE("derived density matches d within one gradient") {
  auto cfg = small_ok();
  cfg.n_g = 12345;
  cfg.d = 0.0173;
  const auto v = validate(cfg);
  CHECK(std::abs(static_cast<double>(v.k) - v.d * static_cast<double>(v.n_g)) <=
        0.5);
}
