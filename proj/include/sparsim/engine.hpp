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

#ifndef SPARSIM_ENGINE_HPP
#define SPARSIM_ENGINE_HPP

#include <functional>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "sparsim/allocator.hpp"
#include "sparsim/collectives.hpp"
#include "sparsim/config.hpp"
#include "sparsim/types.hpp"
#include "sparsim/workloads.hpp"

namespace sparsim {

enum class SparsifierKind { ExDyna, TopK, CLTk, HardThreshold };

const char* to_string(SparsifierKind kind);

struct EngineOptions {
  SparsifierKind sparsifier = SparsifierKind::ExDyna;
  bool static_partitions = false;   // freeze the topology after the initial build
  double fixed_delta = 0.0;         // hard-threshold only
  bool parallel_workers = true;     // run per-worker phases on threads
  bool verify_replication = true;   // bit-compare replicated state each iteration
  bool verify_conservation = false; // deep error-feedback mass check (copies acc)
  bool record_loss = true;          // evaluate task loss at x_{t+1}
};

class EngineError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Lockstep multi-worker simulator for one sparsified-SGD run. Per-worker
// phases may execute concurrently, but collectives are barrier points and
// all results are identical to sequential rank-order execution.
//
// Each iteration runs: accumulate residual + gradient; allocate the search
// range (ExDyna); select; all-gather the index sets; contribute own
// accumulated values at the global index set; all-reduce; update the model
// by 1/n of the sum (the learning rate is already inside the accumulation);
// rescale the threshold from k'/k (ExDyna); clear selected residuals.
class Engine {
 public:
  Engine(SparsifierConfig cfg, EngineOptions opt,
         std::shared_ptr<const GradientSource> source);

  IterationRecord step();
  std::vector<IterationRecord> run(long long iterations);

  long long iteration() const { return t_; }
  const SparsifierConfig& config() const { return cfg_; }
  const EngineOptions& options() const { return opt_; }
  const std::vector<WorkerState>& workers() const { return workers_; }
  // Mutable access for diagnostics and fault-injection tests.
  std::vector<WorkerState>& mutable_workers() { return workers_; }
  const std::string& topology_warning() const { return topology_warning_; }

 private:
  struct Scratch {
    Allocation alloc;
    SparseBatch batch;
    std::vector<double> grad;
    std::vector<double> contribution;
    std::vector<double> snapshot;
    double entering_norm = 0.0;
    bool capped = false;
    AdjustStats adjust;
  };

  void accumulate_phase();
  void initialize_threshold();
  void select_phase();
  void apply_phase(const GatherResult& gather, const std::vector<double>& g,
                   Count k_prime);
  void verify_replication(long long t) const;
  void verify_conservation(const GatherResult& gather) const;
  void for_each_worker(const std::function<void(int)>& fn) const;

  SparsifierConfig cfg_;
  EngineOptions opt_;
  std::shared_ptr<const GradientSource> src_;
  std::vector<WorkerState> workers_;
  mutable std::vector<Scratch> scratch_;
  long long t_ = 0;
  std::string topology_warning_;
};

// (1/n) * sum_i ||e_i||_2 over the workers' residuals.
double global_error(std::span<const WorkerState> workers);

// |k - k'| / n_g.
double density_error(Count k, Count k_prime, Index n_g);

// Rescales an error series onto the threshold series' magnitude: every entry
// is multiplied by sum(deltas) / sum(errors), so the scaled errors sum to
// the same total as the deltas. Throws on length mismatch, empty input or a
// non-positive error sum.
std::vector<double> scaled_error_series(std::span<const double> deltas,
                                        std::span<const double> errors);

}  // namespace sparsim

#endif  // SPARSIM_ENGINE_HPP
