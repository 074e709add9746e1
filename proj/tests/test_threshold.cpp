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

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <doctest.h>

#include "sparsim/rng.hpp"
#include "sparsim/threshold.hpp"

using namespace sparsim;

TEST_CASE("scaling branches follow k'/k against the band") {
  // over the band: grow by gamma
  CHECK(scale_threshold(100, 300, 0.5, 2.0, 0.01) == doctest::Approx(0.505));
  // inside the band: grow by gamma/4
  CHECK(scale_threshold(100, 150, 0.5, 2.0, 0.01) == doctest::Approx(0.50125));
  // under the band: shrink by gamma
  CHECK(scale_threshold(100, 40, 0.5, 2.0, 0.01) == doctest::Approx(0.495));
}

TEST_CASE("band comparisons are strict") {
  // exam == beta stays in-band; exam == 1/beta falls to the shrink branch.
  CHECK(scale_threshold(100, 200, 1.0, 2.0, 0.04) == doctest::Approx(1.01));
  CHECK(scale_threshold(100, 50, 1.0, 2.0, 0.04) == doctest::Approx(0.96));
}

TEST_CASE("threshold stays positive and moves by at most gamma") {
  rng::Stream gen(rng::derive_key({67}));
  for (int trial = 0; trial < 500; ++trial) {
    const Count k = 1 + static_cast<Count>(gen.next_u64() % 1000);
    const Count k_prime = static_cast<Count>(gen.next_u64() % 5000);
    const double delta = 1e-6 + gen.next_unit() * 10.0;
    const double beta = 1.0 + 1e-3 + gen.next_unit() * 3.0;
    const double gamma = 1e-3 + gen.next_unit() * 0.98;

    const double next = scale_threshold(k, k_prime, delta, beta, gamma);
    CHECK(next > 0.0);
    CHECK(std::fabs(next / delta - 1.0) <= gamma + 1e-12);
  }
}

TEST_CASE("initial threshold is the (1-d)-quantile of the sample") {
  CHECK(initial_threshold({1.0, 2.0, 3.0, 4.0}, 0.25) == 4.0);
  CHECK(initial_threshold({4.0, 1.0, 3.0, 2.0}, 1.0) == 1.0);
  CHECK(initial_threshold({2.5, 2.5, 2.5}, 0.4) == 2.5);
}

TEST_CASE("initial threshold rejects an empty sample") {
  CHECK_THROWS_AS(initial_threshold({}, 0.5), std::invalid_argument);
}

TEST_CASE("quantile estimate selects about a d-fraction of the sample") {
  rng::Stream gen(rng::derive_key({71}));
  for (int trial = 0; trial < 50; ++trial) {
    const int m = 100 + static_cast<int>(gen.next_u64() % 900);
    const double d = 0.05 + 0.9 * gen.next_unit();
    std::vector<double> sample(m);
    for (auto& v : sample) v = std::fabs(gen.next_laplace(1.0));

    const double delta = initial_threshold(sample, d);
    const auto selected = static_cast<long long>(
        std::count_if(sample.begin(), sample.end(),
                      [&](double v) { return v >= delta; }));
    const auto pos = static_cast<long long>(std::floor((1.0 - d) * m));
    CHECK(selected == m - std::min<long long>(m - 1, pos));
  }
}
