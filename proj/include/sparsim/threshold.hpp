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

#ifndef SPARSIM_THRESHOLD_HPP
#define SPARSIM_THRESHOLD_HPP

#include <vector>

#include "sparsim/types.hpp"

namespace sparsim {

// Online threshold scaling: multiplies delta by a factor picked from the
// ratio exam = k'/k. Above the band (exam > beta) the threshold grows by
// gamma; inside the band it still grows, by gamma/4, which biases k'
// slightly below k in steady state; below the band (exam <= 1/beta) it
// shrinks by gamma. The relative change never exceeds gamma, so a positive
// delta stays positive.
double scale_threshold(Count k, Count k_prime, double delta, double beta,
                       double gamma);

// One-shot warm-up estimate: the (1-d)-quantile of the sampled |acc| values,
// i.e. a threshold that would select about a d-fraction of the sample.
// Throws on an empty sample. The sample is taken by value and reordered.
double initial_threshold(std::vector<double> magnitudes, double d);

}  // namespace sparsim

#endif  // SPARSIM_THRESHOLD_HPP
