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

#include "sparsim/threshold.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sparsim {

double scale_threshold(Count k, Count k_prime, double delta, double beta,
                       double gamma) {
  const double exam = static_cast<double>(k_prime) / static_cast<double>(k);
  double sf;
  if (exam > beta) {
    sf = 1.0 + gamma;
  } else if (exam > 1.0 / beta) {
    sf = 1.0 + 0.25 * gamma;
  } else {
    sf = 1.0 - gamma;
  }
  return delta * sf;
}

double initial_threshold(std::vector<double> magnitudes, double d) {
  if (magnitudes.empty()) {
    throw std::invalid_argument("initial_threshold: empty sample");
  }
  const auto m = static_cast<Index>(magnitudes.size());
  const Index pos = std::min<Index>(
      m - 1, static_cast<Index>(std::floor((1.0 - d) * static_cast<double>(m))));
  std::nth_element(magnitudes.begin(), magnitudes.begin() + pos,
                   magnitudes.end());
  return magnitudes[static_cast<std::size_t>(pos)];
}

}  // namespace sparsim
