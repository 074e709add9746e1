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

#include "sparsim/config.hpp"

#include <cmath>
#include <stdexcept>

namespace sparsim {

namespace {

[[noreturn]] void fail(const char* what) { throw std::invalid_argument(what); }

}  // namespace

SparsifierConfig validate(SparsifierConfig cfg) {
  if (cfg.n < 1) fail("worker count out of range");
  if (cfg.n_g < 1) fail("gradient count out of range");
  if (cfg.n_b < 1) fail("block count out of range");
  if (!(cfg.d > 0.0) || cfg.d > 1.0) fail("density out of range");
  if (cfg.delta0 && !(*cfg.delta0 > 0.0)) fail("delta0 out of range");
  if (!(cfg.alpha > 1.0)) fail("alpha out of range");
  if (!(cfg.beta > 1.0)) fail("beta out of range");
  if (!(cfg.gamma > 0.0) || !(cfg.gamma < 1.0)) fail("gamma out of range");
  if (cfg.blk_move < 1) fail("blk_move out of range");
  if (cfg.min_blk < 1) fail("min_blk out of range");
  if (!(cfg.eta > 0.0)) fail("eta out of range");
  if (cfg.max_density_cap &&
      (!(*cfg.max_density_cap > 0.0) || *cfg.max_density_cap > 1.0)) {
    fail("max_density_cap out of range");
  }

  cfg.k = static_cast<Count>(std::llround(cfg.d * static_cast<double>(cfg.n_g)));

  if (cfg.n_b < static_cast<Index>(cfg.n) * cfg.min_blk) fail("n_b < n*min_blk");
  if (cfg.n_b > cfg.n_g) fail("n_b > n_g");
  if (cfg.k < cfg.n) fail("k < n");
  return cfg;
}

}  // namespace sparsim
