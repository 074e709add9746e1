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

#ifndef SPARSIM_RUN_CONFIG_HPP
#define SPARSIM_RUN_CONFIG_HPP

#include <memory>
#include <string>
#include <vector>

#include "sparsim/config.hpp"
#include "sparsim/engine.hpp"
#include "sparsim/workloads.hpp"

namespace sparsim {

enum class WorkloadKind { Synthetic, Quadratic, Logistic };

const char* to_string(WorkloadKind kind);

// Full description of one experiment. Serializes to plain key=value lines
// ('#' starts a comment) and parses back without loss; flags land on top of
// file values by overriding individual fields.
struct RunSpec {
  SparsifierConfig cfg;            // cfg.n_b == 0 means "derive 64 * workers"
  SparsifierKind sparsifier = SparsifierKind::ExDyna;
  bool static_partitions = false;
  double fixed_delta = 0.0;        // hard-threshold only
  long long iters = 1000;
  WorkloadKind workload = WorkloadKind::Synthetic;

  // synthetic stream; empty segments mean the default heterogeneous split
  std::vector<StreamSegment> segments;
  StreamDistribution distribution = StreamDistribution::Laplace;
  double decay = 1.0;
  std::optional<long long> decay_step;
  double decay_step_factor = 0.1;

  // analytic tasks
  Index dataset_size = 512;
  Index batch_size = 32;
  double condition = 10.0;
  double label_noise = 0.0;
  double l2_reg = 0.0;

  bool sequential = false;         // disable worker threads
  std::string out = "run.csv";

  bool operator==(const RunSpec&) const = default;
};

// Fills derived defaults (block count, default segments), validates the
// sparsifier config and returns the canonical spec. Throws
// std::invalid_argument naming the offending field.
RunSpec finalized(RunSpec spec);

// Canonical text form; finalized(parse_config_text(serialize(s))) == s for
// any finalized s.
std::string serialize(const RunSpec& spec);

// Applies key=value lines from `text` on top of `spec`. Unknown keys and
// malformed values throw std::invalid_argument with the line's key.
void apply_config_text(RunSpec& spec, const std::string& text);

// Reads a config file; throws std::runtime_error on I/O failure.
RunSpec parse_config_file(const std::string& path);

StreamSpec make_stream_spec(const RunSpec& spec);
TaskSpec make_task_spec(const RunSpec& spec);
std::shared_ptr<const GradientSource> make_source(const RunSpec& spec);

SparsifierKind parse_sparsifier(const std::string& name);

}  // namespace sparsim

#endif  // SPARSIM_RUN_CONFIG_HPP
